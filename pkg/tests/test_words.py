import pytest
from hypothesis import given, strategies as st

from nlpair.words import (
    H_HAT,
    BUILTIN_NAMES,
    ParseError,
    Presentation,
    builtin,
    commutator,
    conjugate,
    cyclic_reduce,
    exponent_sums,
    free_reduce,
    invert,
    parse_presentation,
    power,
    special_relator,
)

words = st.text(alphabet="aAbBcC", max_size=30)


def test_free_reduce_examples():
    assert free_reduce("aA") == ""
    assert free_reduce("DCdCDcdc") == "DCdCDcdc"
    assert free_reduce("abBA") == ""
    assert free_reduce("abBc") == "ac"
    assert free_reduce("") == ""


def test_free_reduce_rejects_non_letters():
    with pytest.raises(ValueError):
        free_reduce("a1")


@given(words)
def test_free_reduce_idempotent_and_reduced(w):
    r = free_reduce(w)
    assert free_reduce(r) == r
    assert all(x != y.swapcase() for x, y in zip(r, r[1:]))


@given(words, words)
def test_inverse_cancels(u, v):
    assert free_reduce(u + invert(u)) == ""
    assert invert(invert(u)) == free_reduce(u)
    assert invert(free_reduce(u + v)) == free_reduce(invert(v) + invert(u))


@given(words)
def test_cyclic_reduce(w):
    r = cyclic_reduce(w)
    assert cyclic_reduce(r) == r
    assert not r or r[0] != r[-1].swapcase() or len(r) == 1
    # cyclic reduction is a conjugation, so exponent sums survive it
    assert exponent_sums(r, ("a", "b", "c")) == exponent_sums(w, ("a", "b", "c"))


def test_constructors():
    assert conjugate("c", "d") == "Dcd"
    assert commutator("a", "b") == "ABab"
    assert power("ab", 2) == "abab"
    assert power("ab", -2) == "BABA"
    assert power("a", 0) == ""
    assert H_HAT == "DCdCDcdc"
    assert H_HAT == commutator(conjugate("c", "d"), "c")
    assert special_relator(H_HAT, 1) == "CDCdcDcdaDCdCDcdcA"
    assert special_relator(H_HAT, -1) == "CDCdcDcdaDCdCDcdca"


def test_builtins_match_fixture(goldens):
    assert set(BUILTIN_NAMES) == set(goldens["builtins"])
    for name, want in goldens["builtins"].items():
        p = builtin(name)
        assert list(p.generators) == want["generators"]
        assert list(p.relators) == want["relators"]


def test_unknown_builtin():
    with pytest.raises(KeyError):
        builtin("nope")


def test_parse_roundtrip():
    for name in BUILTIN_NAMES:
        p = builtin(name)
        assert parse_presentation(str(p)) == p
    free = parse_presentation("< a | >")
    assert free.relators == () and str(free) == "< a | >"


def test_parse_reduces_and_handles_whitespace():
    p = parse_presentation("<a,b|\n  aAbab ,\tBB>")
    assert p.generators == ("a", "b")
    assert p.relators == ("bab", "BB")


@pytest.mark.parametrize("text, line, col", [
    ("< a, a | >", 1, 6),
    ("< a | ab >", 1, 8),
    ("< a | a", 1, 8),
    ("< a |\n a, 7 >", 2, 5),
    ("< A | >", 1, 3),
    ("< a | > x", 1, 9),
])
def test_parse_errors_carry_position(text, line, col):
    with pytest.raises(ParseError) as info:
        parse_presentation(text)
    assert (info.value.line, info.value.column) == (line, col)


def test_presentation_validation():
    with pytest.raises(ValueError):
        Presentation(("a", "a"), ())
    with pytest.raises(ValueError):
        Presentation(("a",), ("aA",))
    with pytest.raises(ValueError):
        Presentation(("a",), ("b",))
