import dataclasses

import pytest

from nlpair.bsgroup import IDENTITY, GroupModel, normal_form
from nlpair.complex2 import Complex2, Edge, euler_characteristic
from nlpair.nonleighton import (
    abelian_consistency_check,
    build_cover_ball,
    build_phi,
    lemma_bottle_consequence_check,
    lemma_commutator_check,
    phi_check,
    torus_klein_demo,
    verify_partial_cover,
    verify_phi,
)
from nlpair.words import H_HAT


@pytest.fixture(scope="module")
def balls2():
    return build_cover_ball(1, 2), build_cover_ball(-1, 2)


@pytest.mark.parametrize("radius", [0, 1, 2, 3])
def test_phi_goldens(goldens, radius):
    rep = phi_check(radius)
    assert rep.passed, rep.to_text()
    for k, v in goldens["phi_counts"][str(radius)].items():
        assert rep.counts[k] == v


@pytest.mark.parametrize("eps", [1, -1])
def test_partial_cover_core_counts(balls2, eps):
    ball = balls2[0] if eps == 1 else balls2[1]
    rep = verify_partial_cover(ball)
    assert rep.passed, rep.to_text()
    assert rep.counts["core"] == 17 == len(ball.special_cells)
    assert any(name.startswith("projection") for name in (c.name for c in rep.checks))


def test_cells_spell_relators(balls2):
    for ball in balls2:
        for f in range(len(ball.complex.faces)):
            word = ball.complex.boundary_word(f)
            rel = ball.presentation.relators[ball.cell_relator[f]]
            assert word in rel + rel


def test_special_cell_carries_loops_at_v_and_vh(balls2):
    ball = balls2[0]
    h = normal_form(H_HAT)
    from nlpair.bsgroup import multiply

    for f in ball.special_cells:
        v = ball.cell_base[f]
        vh = ball.index[multiply(ball.elements[v], h)]
        loops = {ball.complex.edges[e].src for e, _ in ball.complex.faces[f].boundary
                 if ball.complex.edges[e].label == "a"}
        assert loops == {v, vh}


def test_bad_eps_and_mismatch():
    with pytest.raises(ValueError):
        build_cover_ball(0, 1)
    b1, b2 = build_cover_ball(1, 1), build_cover_ball(-1, 1)
    with pytest.raises(ValueError):
        build_phi(b2, b1)
    with pytest.raises(ValueError):
        build_phi(b1, build_cover_ball(-1, 2))


# ------------------------------------------------------------ perturbations


def test_corrupted_a_loop_breaks_partial_cover(balls2):
    ball = balls2[0]
    cx = ball.complex
    loop = cx.edges[ball.a_loop[0]]
    neighbour = cx.edges[ball.x_edge[(0, "c")]].dst
    edges = list(cx.edges)
    edges[loop.id] = Edge(loop.id, loop.src, neighbour, "a")
    broken = dataclasses.replace(ball, complex=Complex2(cx.vertices, tuple(edges), cx.faces))
    rep = verify_partial_cover(broken)
    assert not rep.passed
    witness = rep.failures()[0].witness
    assert witness is not None


def test_forced_parity_breaks_phi_at_identity(balls2):
    b1, b2 = balls2
    phi = build_phi(b1, b2)
    h_vertex = b1.index[normal_form(H_HAT)]
    parity = dict(phi.parity)
    parity[h_vertex] = parity[b1.index[IDENTITY]]
    rep = verify_phi(b1, b2, build_phi(b1, b2, parity))
    assert not rep.passed
    names = [c.name for c in rep.failures()]
    assert "exactly one a-loop flipped on every special cell" in names
    flip = next(c for c in rep.failures() if c.name == "exactly one a-loop flipped on every special cell")
    assert flip.witness["base"] == "c^0"
    assert flip.witness["flipped"] in (0, 2)


def test_all_flipped_is_not_an_isomorphism(balls2):
    b1, b2 = balls2
    rep = verify_phi(b1, b2, build_phi(b1, b2, {v: 1 for v in b1.complex.vertices}))
    assert not rep.passed


# ------------------------------------------------------------ torus / klein


def test_torus_klein_demo(goldens):
    rep = torus_klein_demo(10)
    assert rep.passed, rep.to_text()
    for k, v in goldens["torus_klein_10"].items():
        assert rep.counts[k] == v


def test_torus_klein_small_and_perturbed():
    assert torus_klein_demo(1).passed
    assert not torus_klein_demo(10, perturb=True).passed
    with pytest.raises(ValueError):
        torus_klein_demo(0)


def test_torus_strip_is_an_annulus():
    ball = build_cover_ball(1, 4, model=GroupModel.integers("b"), h_word="b", relators=(), pad=False, cap=4)
    # 9 vertices, 8 b-edges, 9 a-loops, 8 squares: an interval times a circle
    assert ball.complex.counts == (9, 17, 8)
    assert euler_characteristic(ball.complex) == 0


# -------------------------------------------------------------- lemmas


def test_commutator_lemma():
    rep = lemma_commutator_check(6, 5)
    assert rep.passed, rep.to_text()
    assert rep.counts["subgroups"] == 16
    assert rep.counts["homs_by_degree"] == {"1": 1, "2": 4, "3": 12, "4": 96, "5": 480}


def test_bottle_lemma():
    rep = lemma_bottle_consequence_check(4)
    assert rep.passed, rep.to_text()
    assert rep.counts["subgroups_by_index"] == {"1": 1, "2": 7, "3": 13, "4": 111}


def test_abelian_consistency():
    rep = abelian_consistency_check()
    assert rep.passed
    assert rep.counts["groupA"] == [0]
