"""Normal forms in BS(m, n) = < c, d | d^-1 c^m d = c^n >, Cayley balls, h-parity.

An element is stored as ``c^r0 d^e1 c^r1 ... d^ek c^rk`` with the c-powers
pushed left: after ``d`` the exponent lies in ``[0, |n|)``, after ``d^-1`` in
``[0, |m|)``, and no ``d^e c^0 d^-e`` occurs.  Such a form is unique, so
element equality is tuple equality.

The infinite cyclic group is the model with no stable letter: elements are
``b^r0`` and nothing else.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass

from .errors import CapExceeded

__all__ = [
    "BallGraph",
    "BsElement",
    "GroupModel",
    "BS35",
    "INTEGERS",
    "cayley_ball",
    "h_parity",
    "invert_el",
    "multiply",
    "normal_form",
    "CyclicHError",
]

BALL_RADIUS_CAP = 6


@dataclass(frozen=True)
class GroupModel:
    kind: str  # "bs" or "integers"
    m: int = 1
    n: int = 1
    gens: tuple[str, ...] = ("c", "d")

    def __post_init__(self):
        if self.kind not in ("bs", "integers"):
            raise ValueError(f"unknown group kind {self.kind!r}")
        if self.m == 0 or self.n == 0:
            raise ValueError("BS(m, n) needs m, n nonzero")
        if len(self.gens) != (2 if self.kind == "bs" else 1):
            raise ValueError(f"wrong number of generator names {self.gens}")

    @classmethod
    def bs(cls, m: int, n: int, gens=("c", "d")) -> "GroupModel":
        return cls("bs", m, n, tuple(gens))

    @classmethod
    def integers(cls, gen: str = "b") -> "GroupModel":
        return cls("integers", 1, 1, (gen,))

    @property
    def letters(self) -> tuple[str, ...]:
        """Right-multiplication steps for the Cayley graph, in BFS order."""
        return tuple(ch for g in self.gens for ch in (g, g.upper()))


BS35 = GroupModel.bs(3, 5)
INTEGERS = GroupModel.integers("b")


@dataclass(frozen=True, order=True)
class BsElement:
    r0: int = 0
    syllables: tuple[tuple[int, int], ...] = ()  # (d-exponent +-1, c-exponent)

    def key(self) -> tuple:
        """Total order used to pick roots: fewer d-syllables, then small |r0|."""
        return (len(self.syllables), abs(self.r0), self.r0 < 0, self.syllables)

    def canonical(self, model: GroupModel = BS35) -> str:
        c = model.gens[0]
        if model.kind == "integers":
            return f"{c}^{self.r0}"
        d = model.gens[1]
        parts = [f"{c}^{self.r0}"]
        for e, r in self.syllables:
            parts.append(f"{d}^{e}")
            parts.append(f"{c}^{r}")
        return " ".join(parts)

    def word(self, model: GroupModel = BS35) -> str:
        """A word (not necessarily reduced) representing this element."""
        c = model.gens[0]

        def cpow(k):
            return c * k if k >= 0 else c.upper() * -k

        out = [cpow(self.r0)]
        for e, r in self.syllables:
            out.append(model.gens[1] if e > 0 else model.gens[1].upper())
            out.append(cpow(r))
        return "".join(out)

    @property
    def is_identity(self) -> bool:
        return self.r0 == 0 and not self.syllables


IDENTITY = BsElement()


class _Builder:
    """Normal form grown by prepending; syllables kept reversed for O(1) prepends."""

    __slots__ = ("m", "n", "r0", "rev")

    def __init__(self, model: GroupModel, el: BsElement = IDENTITY):
        self.m, self.n = model.m, model.n
        self.r0 = el.r0
        self.rev = list(reversed(el.syllables))

    def prepend_c(self, k: int) -> None:
        self.r0 += k

    def prepend_d(self, e: int) -> None:
        # d c^(n t + s) = c^(m t) d c^s ; d^-1 c^(m t + s) = c^(n t) d^-1 c^s
        mod, other = (self.n, self.m) if e > 0 else (self.m, self.n)
        s = self.r0 % abs(mod)
        t = (self.r0 - s) // mod
        if s == 0 and self.rev and self.rev[-1][0] == -e:
            # pinch: d^e c^(mod t) d^-e collapses
            _, r1 = self.rev.pop()
            self.r0 = other * t + r1
        else:
            self.rev.append((e, s))
            self.r0 = other * t

    def element(self) -> BsElement:
        return BsElement(self.r0, tuple(reversed(self.rev)))


def _letter_index(model: GroupModel, ch: str) -> int:
    try:
        return model.gens.index(ch.lower())
    except ValueError:
        raise ValueError(f"letter {ch!r} is not a generator of {model}") from None


def normal_form(w: str, model: GroupModel = BS35) -> BsElement:
    if model.kind == "integers":
        total = 0
        for ch in w:
            _letter_index(model, ch)
            total += 1 if ch.islower() else -1
        return BsElement(total)
    b = _Builder(model)
    for ch in reversed(w):
        sign = 1 if ch.islower() else -1
        if _letter_index(model, ch) == 0:
            b.prepend_c(sign)
        else:
            b.prepend_d(sign)
    return b.element()


def multiply(x: BsElement, y: BsElement, model: GroupModel = BS35) -> BsElement:
    if model.kind == "integers":
        if x.syllables or y.syllables:
            raise ValueError("element does not belong to the integers model")
        return BsElement(x.r0 + y.r0)
    b = _Builder(model, y)
    for e, r in reversed(x.syllables):
        b.prepend_c(r)
        b.prepend_d(e)
    b.prepend_c(x.r0)
    return b.element()


def invert_el(x: BsElement, model: GroupModel = BS35) -> BsElement:
    if model.kind == "integers":
        return BsElement(-x.r0)
    # (c^r0 d^e1 c^r1 ... d^ek c^rk)^-1 = c^-rk d^-ek ... d^-e1 c^-r0
    b = _Builder(model)
    b.prepend_c(-x.r0)
    for e, r in x.syllables:
        b.prepend_d(-e)
        b.prepend_c(-r)
    return b.element()


def step(x: BsElement, letter: str, model: GroupModel = BS35) -> BsElement:
    """``x`` times a single generator or inverse letter."""
    return multiply(x, normal_form(letter, model), model)


@dataclass
class BallGraph:
    model: GroupModel
    radius: int
    vertices: list[BsElement]          # BFS order
    distance: dict[BsElement, int]
    edges: list[tuple[BsElement, str, BsElement]]  # positive generator labels only

    def __contains__(self, v: BsElement) -> bool:
        return v in self.distance

    def to_dict(self) -> dict:
        c = self.model
        return {
            "radius": self.radius,
            "vertices": [{"element": v.canonical(c), "distance": self.distance[v]} for v in self.vertices],
            "edges": [{"src": u.canonical(c), "label": g, "dst": v.canonical(c)} for u, g, v in self.edges],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)


def cayley_ball(model: GroupModel, radius: int, *, cap: int = BALL_RADIUS_CAP) -> BallGraph:
    """Ball of the given radius in the word metric, by BFS with normal-form dedup."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    if radius > cap:
        raise CapExceeded(f"radius {radius} exceeds the cap {cap}")
    steps = {ch: normal_form(ch, model) for ch in model.letters}
    dist = {IDENTITY: 0}
    order = [IDENTITY]
    todo = deque([IDENTITY])
    while todo:
        v = todo.popleft()
        if dist[v] == radius:
            continue
        for ch in model.letters:
            u = multiply(v, steps[ch], model)
            if u not in dist:
                dist[u] = dist[v] + 1
                order.append(u)
                todo.append(u)
    edges = []
    for v in order:
        for g in model.gens:
            u = multiply(v, steps[g], model)
            if u in dist:
                edges.append((v, g, u))
    return BallGraph(model, radius, order, dist, edges)


class CyclicHError(ArithmeticError):
    """Right translation by h closed a cycle inside a finite vertex set."""


def h_parity(vertices, h: BsElement, model: GroupModel = BS35) -> dict[BsElement, int]:
    """2-color the paths of ``v -> v h`` inside ``vertices``.

    Each component is a path; its least element (by :meth:`BsElement.key`)
    gets parity 0 and parities alternate along the path.
    """
    if hasattr(vertices, "vertices"):
        vertices = vertices.vertices
    vset = set(vertices)
    succ = {}
    has_pred = set()
    for v in vset:
        u = multiply(v, h, model)
        if u in vset:
            succ[v] = u
            has_pred.add(u)
    parity: dict[BsElement, int] = {}
    for start in sorted(vset - has_pred, key=BsElement.key):
        path = [start]
        while path[-1] in succ:
            path.append(succ[path[-1]])
        root = min(range(len(path)), key=lambda i: path[i].key())
        for i, v in enumerate(path):
            parity[v] = abs(i - root) % 2
    if len(parity) != len(vset):
        stuck = min(vset - set(parity), key=BsElement.key)
        raise CyclicHError(f"h-translation cycles through {stuck.canonical(model)}; h has finite order?")
    return parity
