import json

import numpy as np
import pytest

from nlpair.enumeration import (
    CosetTable,
    abelianization,
    encode,
    enumerate_homs,
    exponent_matrix,
    fixes_coset_one,
    low_index,
    perm_order,
    schreier_generators,
    todd_coxeter,
)
from nlpair.errors import CapExceeded, CosetOverflow
from nlpair.words import H_HAT, builtin, parse_presentation

from oracles import brute_hom_count, subgroup_counts_from_homs, sublattice_count, word_in_perm_image


def counts_by_index(tables, n_max):
    out = [0] * n_max
    for t in tables:
        out[t.n - 1] += 1
    return out


# ---------------------------------------------------------- oracle agreement


@pytest.mark.parametrize("name, n_max", [("bs35", 5), ("torus", 5), ("klein", 5), ("h_minus", 4), ("groupA", 4)])
def test_low_index_matches_hom_recurrence(name, n_max):
    p = builtin(name)
    homs = [brute_hom_count(p, d) for d in range(1, n_max + 1)]
    assert counts_by_index(low_index(p, n_max), n_max) == subgroup_counts_from_homs(homs)


def test_torus_low_index_matches_sublattices():
    got = counts_by_index(low_index(builtin("torus"), 8), 8)
    assert got == [sublattice_count(n) for n in range(1, 9)]


@pytest.mark.parametrize("name, degree", [("bs35", 4), ("bs35", 5), ("torus", 4), ("klein", 4), ("groupQ", 3)])
def test_hom_count_matches_brute_force(name, degree):
    p = builtin(name)
    assert len(enumerate_homs(p, degree)) == brute_hom_count(p, degree)


def test_free_group_counts():
    free = parse_presentation("< a | >")
    assert counts_by_index(low_index(free, 5), 5) == [1] * 5
    assert len(enumerate_homs(free, 4)) == 24


# ------------------------------------------------------------------ goldens


def test_low_index_goldens(goldens):
    want = goldens["low_index_by_index"]["bs35"]
    assert counts_by_index(low_index(builtin("bs35"), 8), 8) == want
    assert counts_by_index(low_index(builtin("h_minus"), 4), 4) == goldens["low_index_by_index"]["h_minus"]
    assert len(low_index(builtin("h_minus"), 5)) == goldens["low_index_totals"]["h_minus_5"]


def test_hom_goldens(goldens):
    bs35 = builtin("bs35")
    assert [len(enumerate_homs(bs35, d)) for d in range(1, 7)] == goldens["homs_bs35"]


def test_abelianization_goldens(goldens):
    for name, want in goldens["abelianization"].items():
        assert abelianization(builtin(name)) == want
    assert abelianization(builtin("klein")) == [2, 0]
    assert abelianization(parse_presentation("< a, b | >")) == [0, 0]
    assert exponent_matrix(builtin("bs35")) == [[-2, 0]]


# ------------------------------------------------------------ table shape


def test_low_index_tables_are_canonical_and_distinct():
    p = builtin("bs35")
    tables = low_index(p, 6)
    assert len(set(tables)) == len(tables) == 16
    assert [t.key() for t in tables] == sorted(t.key() for t in tables)
    for t in tables:
        assert t.is_complete() and t.is_transitive() and t.is_canonical()
        assert t.relators_closed(p.relators)


def test_low_index_contains_h_hat():
    for t in low_index(builtin("bs35"), 6):
        assert fixes_coset_one(t, H_HAT)


def test_low_index_rejects_bad_bound():
    with pytest.raises(ValueError):
        low_index(builtin("bs35"), 0)


def test_trace_all_matches_trace():
    p = builtin("torus")
    for t in low_index(p, 4):
        words = ["a", "B", "abAB", "aab", ""]
        ends = t.trace_all(words)
        for k, w in enumerate(words):
            assert [t.trace(w, i) for i in range(t.n)] == ends[k].tolist()


def test_json_roundtrip_is_one_based():
    t = todd_coxeter(builtin("torus"), ["aa", "b"])
    d = t.to_dict()
    assert d == {"n": 2, "action": {"a": [2, 1], "b": [1, 2]}}
    assert CosetTable.from_dict(t.generators, json.loads(t.to_json())) == t
    with pytest.raises(ValueError):
        CosetTable.from_dict(("a", "b"), {"n": 2, "action": {"a": [1], "b": [1, 2]}})


def test_partial_table():
    t = CosetTable(("a",), [[1, -1], [-1, 0]])
    assert not t.is_complete()
    assert t.trace("aa") == -1


# ------------------------------------------------------------- todd-coxeter


def test_todd_coxeter_examples():
    assert todd_coxeter(builtin("bs35"), ["c", "dd", "dcD"]).n == 2
    assert todd_coxeter(parse_presentation("< a | >"), ["aaa"]).n == 3
    assert todd_coxeter(builtin("torus"), ["a", "b"]).n == 1
    assert todd_coxeter(parse_presentation("< a, b | aa, bb, abab >"), []).n == 4
    # S3 on cosets of the trivial subgroup
    assert todd_coxeter(parse_presentation("< a, b | aa, bbb, abab >"), []).n == 6


def test_todd_coxeter_overflow():
    with pytest.raises(CosetOverflow):
        todd_coxeter(builtin("torus"), ["a"], max_cosets=10)
    with pytest.raises(CapExceeded):
        todd_coxeter(builtin("torus"), ["a"], max_cosets=10)


@pytest.mark.parametrize("name", ["bs35", "torus", "klein", "groupA"])
def test_todd_coxeter_reproduces_low_index(name):
    p = builtin(name)
    for t in low_index(p, 4):
        gens = schreier_generators(t)
        assert all(fixes_coset_one(t, w) for w in gens)
        assert todd_coxeter(p, gens) == t


def test_schreier_index_one_is_everything():
    t = todd_coxeter(builtin("torus"), ["a", "b"])
    assert schreier_generators(t) == ["a", "b"]


# ----------------------------------------------------------- homomorphisms


def test_homs_are_homomorphisms_and_sorted():
    p = builtin("bs35")
    homs = enumerate_homs(p, 4)
    for h in homs:
        for r in p.relators:
            assert h.image(r) == (0, 1, 2, 3)
    assert [h.images for h in homs] == sorted(h.images for h in homs)


def test_hom_image_is_right_action():
    p = builtin("torus")
    for h in enumerate_homs(p, 3)[:20]:
        assert list(h.image("abA")) == word_in_perm_image(p, h.images, "abA")


def test_hom_cap():
    with pytest.raises(CapExceeded):
        enumerate_homs(builtin("bs35"), 7)
    with pytest.raises(ValueError):
        enumerate_homs(builtin("bs35"), 0)


def test_perm_order():
    assert perm_order((0, 1, 2)) == 1
    assert perm_order((1, 2, 0, 4, 3)) == 6


def test_encode():
    assert encode("aBc", ("a", "b", "c")) == [0, 3, 4]
    with pytest.raises(ValueError):
        encode("z", ("a",))
