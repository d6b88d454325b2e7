import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nlpair.bsgroup import (
    BS35,
    IDENTITY,
    INTEGERS,
    BsElement,
    CyclicHError,
    GroupModel,
    cayley_ball,
    h_parity,
    invert_el,
    multiply,
    normal_form,
    step,
)
from nlpair.enumeration import enumerate_homs
from nlpair.errors import CapExceeded
from nlpair.words import H_HAT, builtin, invert

bs_words = st.text(alphabet="cCdD", max_size=24)


def test_normal_form_goldens(goldens):
    for word, want in goldens["normal_forms"].items():
        assert normal_form(word).canonical() == want


def test_relator_is_trivial():
    assert normal_form("DcccdCCCCC").is_identity
    assert normal_form("").is_identity
    assert normal_form(H_HAT) != IDENTITY


def test_unknown_letter():
    with pytest.raises(ValueError):
        normal_form("x")


@settings(max_examples=400)
@given(bs_words, st.integers(0, 9), st.integers(0, 24), st.booleans())
def test_relator_insertion_invariance(w, rot, pos, inverse):
    rel = "DcccdCCCCC"
    r = rel[rot:] + rel[:rot]
    if inverse:
        r = invert(r)
    pos = min(pos, len(w))
    assert normal_form(w[:pos] + r + w[pos:]) == normal_form(w)


@given(bs_words, bs_words, bs_words)
def test_group_axioms(x, y, z):
    a, b, c = normal_form(x), normal_form(y), normal_form(z)
    assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))
    assert multiply(a, b) == normal_form(x + y)
    assert multiply(a, invert_el(a)) == IDENTITY
    assert invert_el(a) == normal_form(invert(x) if x else "")
    assert normal_form(a.word()) == a


@given(bs_words)
def test_normal_form_shape(w):
    el = normal_form(w)
    for k, (e, r) in enumerate(el.syllables):
        assert e in (1, -1)
        assert 0 <= r < (5 if e > 0 else 3)
        if k + 1 < len(el.syllables):
            assert not (r == 0 and el.syllables[k + 1][0] == -e)


def test_equal_normal_forms_agree_in_every_quotient():
    """Equal normal forms must have equal images under all maps to S_4."""
    homs = enumerate_homs(builtin("bs35"), 4)
    rng = random.Random(7)
    by_nf = {}
    for _ in range(3000):
        w = "".join(rng.choice("cCdD") for _ in range(rng.randint(0, 10)))
        by_nf.setdefault(normal_form(w), []).append(w)
    collisions = [ws for ws in by_nf.values() if len(ws) > 1]
    assert collisions
    for ws in collisions:
        for h in homs:
            assert len({h.image(w) for w in ws}) == 1


def _affine(word, n):
    """2x2 representation of BS(1, n), faithful for abs(n) >= 2: c -> [[1,1],[0,1]], d -> [[1/n,0],[0,1]]."""
    c = ((Fraction(1), Fraction(1)), (Fraction(0), Fraction(1)))
    C = ((Fraction(1), Fraction(-1)), (Fraction(0), Fraction(1)))
    d = ((Fraction(1, n), Fraction(0)), (Fraction(0), Fraction(1)))
    D = ((Fraction(n), Fraction(0)), (Fraction(0), Fraction(1)))
    mats = {"c": c, "C": C, "d": d, "D": D}
    m = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))
    for ch in word:
        x = mats[ch]
        m = tuple(tuple(sum(m[i][k] * x[k][j] for k in range(2)) for j in range(2)) for i in range(2))
    return m


@pytest.mark.parametrize("n", [2, -2, 3])  # faithful only for |n| >= 2
def test_bs1n_normal_form_against_affine_representation(n):
    model = GroupModel.bs(1, n)
    rng = random.Random(n)
    for _ in range(600):
        u = "".join(rng.choice("cCdD") for _ in range(rng.randint(0, 9)))
        v = "".join(rng.choice("cCdD") for _ in range(rng.randint(0, 9)))
        assert (normal_form(u, model) == normal_form(v, model)) == (_affine(u, n) == _affine(v, n))


def test_integers_model():
    assert normal_form("bbB", INTEGERS) == BsElement(1)
    assert normal_form("bbB", INTEGERS).canonical(INTEGERS) == "b^1"
    assert step(BsElement(2), "B", INTEGERS) == BsElement(1)
    assert [len(cayley_ball(INTEGERS, r).vertices) for r in range(5)] == [1, 3, 5, 7, 9]


def test_model_validation():
    with pytest.raises(ValueError):
        GroupModel.bs(0, 2)
    with pytest.raises(ValueError):
        GroupModel("bs", 1, 1, ("c",))
    with pytest.raises(ValueError):
        GroupModel("free", 1, 1, ("c",))


def test_ball_sizes(goldens):
    assert [len(cayley_ball(BS35, r).vertices) for r in range(5)] == goldens["ball_sizes_bs35"]


def test_ball_distances_and_edges():
    ball = cayley_ball(BS35, 3)
    assert ball.vertices[0] == IDENTITY
    for u, g, v in ball.edges:
        assert step(u, g) == v
        assert abs(ball.distance[u] - ball.distance[v]) <= 1
    for v in ball.vertices:
        assert len(v.word()) >= ball.distance[v] or v.is_identity
    data = ball.to_dict()
    assert data["vertices"][0] == {"element": "c^0", "distance": 0}


def test_ball_cap():
    with pytest.raises(CapExceeded):
        cayley_ball(BS35, 7)
    with pytest.raises(ValueError):
        cayley_ball(BS35, -1)


def test_parity_integers():
    ball = cayley_ball(INTEGERS, 6)
    par = h_parity(ball, BsElement(1), INTEGERS)
    assert all(par[v] == v.r0 % 2 for v in ball.vertices)


def test_parity_alternates_along_h():
    ball = cayley_ball(BS35, 3)
    h = normal_form(H_HAT)
    par = h_parity(ball, h)
    assert par[IDENTITY] == 0
    for v in ball.vertices:
        u = multiply(v, h)
        if u in ball:
            assert par[u] != par[v]


def test_parity_rejects_torsion_h():
    with pytest.raises(CyclicHError):
        h_parity(cayley_ball(BS35, 1), IDENTITY)


def test_klein_bottle_model():
    klein = GroupModel.bs(1, -1)
    assert normal_form("Dcd", klein) == normal_form("C", klein)
    assert normal_form("dd", klein) != IDENTITY
    assert normal_form("Dcdc", klein).is_identity
