"""Words over single-letter alphabets and finite presentations.

A word is a plain ``str``: a lowercase letter is a generator, the matching
uppercase letter its inverse (``"A"`` is ``a^-1``).  All constructors return
freely reduced words.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

__all__ = [
    "BUILTIN_NAMES",
    "H_HAT",
    "ParseError",
    "Presentation",
    "builtin",
    "commutator",
    "conjugate",
    "cyclic_reduce",
    "exponent_sums",
    "free_reduce",
    "invert",
    "letters_used",
    "parse_presentation",
    "power",
    "special_relator",
]


class ParseError(ValueError):
    """Malformed presentation text; carries 1-based line and column."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line else ""
        super().__init__(message + where)


def _check_word(w: str) -> None:
    if not (w == "" or w.isascii() and w.isalpha()):
        raise ValueError(f"not a word: {w!r}")


def free_reduce(w: str) -> str:
    """Cancel adjacent inverse pairs until none remain."""
    _check_word(w)
    out: list[str] = []
    for ch in w:
        if out and out[-1] == ch.swapcase():
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


def cyclic_reduce(w: str) -> str:
    w = free_reduce(w)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == w[j - 1].swapcase():
        i += 1
        j -= 1
    return w[i:j]


def invert(w: str) -> str:
    return free_reduce(w[::-1].swapcase())


def conjugate(x: str, y: str) -> str:
    """``x^y = y^-1 x y``."""
    return free_reduce(invert(y) + x + y)


def power(x: str, k: int) -> str:
    if k < 0:
        return free_reduce(invert(x) * -k)
    return free_reduce(x * k)


def commutator(x: str, y: str) -> str:
    """``[x, y] = x^-1 y^-1 x y``."""
    return free_reduce(invert(x) + invert(y) + x + y)


def letters_used(w: str) -> set[str]:
    return {ch.lower() for ch in w}


def exponent_sums(w: str, generators: tuple[str, ...]) -> list[int]:
    index = {g: i for i, g in enumerate(generators)}
    row = [0] * len(generators)
    for ch in w:
        row[index[ch.lower()]] += 1 if ch.islower() else -1
    return row


# [c^d, c], the element that every finite-index subgroup of BS(3,5) contains.
H_HAT = commutator(conjugate("c", "d"), "c")


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.generators)) != len(self.generators):
            raise ValueError(f"duplicate generator in {self.generators}")
        for g in self.generators:
            if len(g) != 1 or not ("a" <= g <= "z"):
                raise ValueError(f"generator must be one lowercase letter: {g!r}")
        gens = set(self.generators)
        for r in self.relators:
            if free_reduce(r) != r:
                raise ValueError(f"relator not freely reduced: {r!r}")
            extra = letters_used(r) - gens
            if extra:
                raise ValueError(f"relator {r!r} uses undeclared {sorted(extra)}")

    def __str__(self) -> str:
        rels = ", ".join(self.relators)
        return f"< {', '.join(self.generators)} | {rels + ' ' if rels else ''}>"

    @property
    def ngens(self) -> int:
        return len(self.generators)


_TOKEN = re.compile(r"\s*(?:(?P<sym>[<>|,])|(?P<word>[A-Za-z]+)|(?P<bad>\S))")


def _tokens(text: str):
    line_starts = [0] + [m.end() for m in re.finditer("\n", text)]

    def where(pos: int) -> tuple[int, int]:
        line = max(i for i, s in enumerate(line_starts) if s <= pos)
        return line + 1, pos - line_starts[line] + 1

    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        pos = m.end()
        if m.group("bad"):
            raise ParseError(f"unexpected character {m.group('bad')!r}", *where(m.start("bad")))
        kind = "sym" if m.group("sym") else "word"
        yield kind, m.group(kind), where(m.start(kind))
    yield "end", "", where(len(text))


def parse_presentation(text: str) -> Presentation:
    """Parse ``< g1, g2, ... | w1, w2, ... >``.

    Relators are freely reduced; generator order is preserved.
    """
    toks = list(_tokens(text))
    i = 0

    def expect(value: str):
        nonlocal i
        kind, val, (ln, col) = toks[i]
        if val != value:
            raise ParseError(f"expected {value!r}, got {val or 'end of input'!r}", ln, col)
        i += 1

    expect("<")
    gens: list[str] = []
    while True:
        kind, val, (ln, col) = toks[i]
        if kind != "word" or len(val) != 1 or not val.islower():
            raise ParseError(f"expected a lowercase generator, got {val or 'end of input'!r}", ln, col)
        if val in gens:
            raise ParseError(f"duplicate generator {val!r}", ln, col)
        gens.append(val)
        i += 1
        if toks[i][1] == ",":
            i += 1
            continue
        break
    expect("|")
    rels: list[str] = []
    if toks[i][1] != ">":
        while True:
            kind, val, (ln, col) = toks[i]
            if kind != "word":
                raise ParseError(f"expected a relator word, got {val or 'end of input'!r}", ln, col)
            for k, ch in enumerate(val):
                if ch.lower() not in gens:
                    raise ParseError(f"undeclared generator {ch.lower()!r} in relator", ln, col + k)
            rels.append(free_reduce(val))
            i += 1
            if toks[i][1] == ",":
                i += 1
                continue
            break
    expect(">")
    kind, val, (ln, col) = toks[i]
    if kind != "end":
        raise ParseError(f"trailing input {val!r}", ln, col)
    return Presentation(tuple(gens), tuple(rels))


def special_relator(h_word: str, eps: int) -> str:
    """``h^-1 a h a^-eps``, the relator making ``a^h = a^eps``."""
    return free_reduce(conjugate("a", h_word) + power("a", -eps))


def _builtins() -> dict[str, Presentation]:
    bs35 = free_reduce(conjugate(power("c", 3), "d") + power("c", -5))
    e3c5 = free_reduce(power("e", 3) + power("c", -5))
    return {
        "bs35": Presentation(("c", "d"), (bs35,)),
        "h_plus": Presentation(("a", "c", "d"), (special_relator(H_HAT, 1), bs35)),
        "h_minus": Presentation(("a", "c", "d"), (special_relator(H_HAT, -1), bs35)),
        "torus": Presentation(("a", "b"), (commutator("a", "b"),)),
        "klein": Presentation(("a", "b"), (cyclic_reduce(conjugate("a", "b") + "a"),)),
        "groupA": Presentation(("c", "e"), (commutator("e", "c"), e3c5)),
        "groupQ": Presentation(
            ("c", "e", "d"),
            (commutator("e", "c"), e3c5, free_reduce(conjugate("c", "d") + invert("e"))),
        ),
    }


BUILTIN_NAMES = tuple(_builtins())


def builtin(name: str) -> Presentation:
    try:
        return _builtins()[name]
    except KeyError:
        raise KeyError(f"unknown builtin {name!r}; choose from {', '.join(BUILTIN_NAMES)}") from None
