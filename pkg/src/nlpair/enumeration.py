"""Coset enumeration, low-index subgroups, finite quotients, abelianization.

Cosets act on the right: tracing ``w = x1 x2 ...`` from coset ``i`` means
``i -> i.x1 -> (i.x1).x2 -> ...``.  Internally cosets are 0-based; the JSON
form is 1-based.
"""

from __future__ import annotations

import itertools
import json
import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import CapExceeded, CosetOverflow
from .snf import invariant_factors
from .words import Presentation, cyclic_reduce, exponent_sums, free_reduce, invert

__all__ = [
    "CapExceeded",
    "CosetOverflow",
    "CosetTable",
    "Homomorphism",
    "abelianization",
    "encode",
    "enumerate_homs",
    "fixes_coset_one",
    "low_index",
    "schreier_generators",
    "todd_coxeter",
]

HOM_DEGREE_CAP = 6


def encode(w: str, generators: tuple[str, ...]) -> list[int]:
    """Word -> column indices (``2*i`` for generator ``i``, ``2*i+1`` for its inverse)."""
    index = {g: i for i, g in enumerate(generators)}
    bad = sorted({ch for ch in w if ch.lower() not in index})
    if bad:
        raise ValueError(f"word {w!r} uses letters {bad} outside generators {list(generators)}")
    return [2 * index[ch.lower()] + (0 if ch.islower() else 1) for ch in w]


def _flatten(words: list[list[int]]):
    flat = np.array([x for w in words for x in w], dtype=np.int32)
    lens = np.array([len(w) for w in words], dtype=np.int32)
    starts = np.zeros(len(words), dtype=np.int32)
    if len(words) > 1:
        starts[1:] = np.cumsum(lens)[:-1]
    return flat, starts, lens


def _canonical(table: list[list[int]]) -> list[list[int]]:
    """Renumber a complete table by first appearance, scanning from coset 0."""
    order = [0]
    new = {0: 0}
    k = 0
    while k < len(order):
        for target in table[order[k]]:
            if target not in new:
                new[target] = len(order)
                order.append(target)
        k += 1
    return [[new[t] for t in table[old]] for old in order]


class CosetTable:
    """Complete or partial action of the generators on ``n`` cosets."""

    def __init__(self, generators, table):
        self.generators = tuple(generators)
        arr = np.array(table, dtype=np.int32).reshape(-1, 2 * len(self.generators))
        arr.setflags(write=False)
        self.table = arr

    @property
    def n(self) -> int:
        return self.table.shape[0]

    @property
    def action(self) -> dict[str, tuple[int, ...]]:
        return {g: tuple(int(x) for x in self.table[:, 2 * i]) for i, g in enumerate(self.generators)}

    def key(self) -> tuple:
        return (self.n, tuple(int(x) for x in self.table.ravel()))

    def __eq__(self, other):
        if not isinstance(other, CosetTable):
            return NotImplemented
        return self.generators == other.generators and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.generators, self.table.tobytes()))

    def __repr__(self):
        return f"CosetTable(n={self.n}, action={self.action})"

    def is_complete(self) -> bool:
        if (self.table < 0).any():
            return False
        for c in range(0, self.table.shape[1], 2):
            fwd = self.table[:, c]
            if sorted(fwd.tolist()) != list(range(self.n)):
                return False
            if not np.array_equal(self.table[fwd, c + 1], np.arange(self.n)):
                return False
        return True

    def is_transitive(self) -> bool:
        seen = {0}
        todo = [0]
        while todo:
            i = todo.pop()
            for t in self.table[i]:
                if t >= 0 and int(t) not in seen:
                    seen.add(int(t))
                    todo.append(int(t))
        return len(seen) == self.n

    def is_canonical(self) -> bool:
        return self.is_complete() and _canonical(self.table.tolist()) == self.table.tolist()

    def trace(self, w: str, start: int = 0) -> int:
        """End coset of ``w`` from ``start``, or -1 if an entry is undefined."""
        f = start
        for col in encode(w, self.generators):
            f = int(self.table[f, col])
            if f < 0:
                return -1
        return f

    def trace_all(self, words: list[str]) -> np.ndarray:
        """``ends[k, i]`` = end coset of ``words[k]`` traced from coset ``i``."""
        if not words:
            return np.zeros((0, self.n), dtype=np.int32)
        flat, starts, lens = _flatten([encode(w, self.generators) for w in words])
        m = len(words)
        rep_starts = np.repeat(starts, self.n)
        rep_lens = np.repeat(lens, self.n)
        cosets = np.tile(np.arange(self.n, dtype=np.int32), m)
        ends = _kernels.trace_many(self.table, flat, rep_starts, rep_lens, cosets)
        return ends.reshape(m, self.n)

    def relators_closed(self, relators) -> bool:
        ends = self.trace_all(list(relators))
        return bool((ends == np.arange(self.n)).all())

    def to_dict(self) -> dict:
        return {"n": self.n, "action": {g: [x + 1 for x in imgs] for g, imgs in self.action.items()}}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, generators, data: dict) -> "CosetTable":
        n = int(data["n"])
        table = np.full((n, 2 * len(generators)), -1, dtype=np.int32)
        for i, g in enumerate(generators):
            images = [int(x) - 1 for x in data["action"][g]]
            if len(images) != n:
                raise ValueError(f"action of {g!r} has {len(images)} images, expected {n}")
            for src, dst in enumerate(images):
                table[src, 2 * i] = dst
                table[dst, 2 * i + 1] = src
        return cls(generators, table)


def fixes_coset_one(table: CosetTable, w: str) -> bool:
    """True iff ``w`` lies in the subgroup the table describes."""
    return table.trace(w, 0) == 0


# ---------------------------------------------------------------- Todd-Coxeter


class _Enumerator:
    """Relator-tracing (HLT) enumeration with a deduction queue and union-find merges."""

    def __init__(self, presentation: Presentation, max_cosets: int):
        self.gens = presentation.generators
        self.ncols = 2 * len(self.gens)
        self.rels = [encode(r, self.gens) for r in (cyclic_reduce(r) for r in presentation.relators) if r]
        # every cyclic rotation of every relator and its inverse, bucketed by first letter
        self.rotations: list[list[list[int]]] = [[] for _ in range(self.ncols)]
        for r in self.rels:
            for w in (r, [x ^ 1 for x in reversed(r)]):
                for k in range(len(w)):
                    rot = w[k:] + w[:k]
                    self.rotations[rot[0]].append(rot)
        self.max_cosets = max_cosets
        self.table: list[list[int]] = [[-1] * self.ncols]
        self.parent = [0]
        self.live = 1
        self.deductions: deque[tuple[int, int]] = deque()

    def find(self, c: int) -> int:
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def alive(self, c: int) -> bool:
        return self.parent[c] == c

    def define(self, c: int, x: int) -> None:
        if self.live >= self.max_cosets:
            raise CosetOverflow(f"more than {self.max_cosets} live cosets")
        new = len(self.table)
        self.table.append([-1] * self.ncols)
        self.parent.append(new)
        self.live += 1
        self.table[c][x] = new
        self.table[new][x ^ 1] = c
        self.deductions.append((c, x))

    def _merge(self, k: int, l: int, queue: list[int]) -> None:
        k, l = self.find(k), self.find(l)
        if k == l:
            return
        k, l = min(k, l), max(k, l)
        self.parent[l] = k
        self.live -= 1
        queue.append(l)

    def coincidence(self, alpha: int, beta: int) -> None:
        queue: list[int] = []
        self._merge(alpha, beta, queue)
        i = 0
        while i < len(queue):
            gamma = queue[i]
            i += 1
            for x in range(self.ncols):
                delta = self.table[gamma][x]
                if delta < 0:
                    continue
                self.table[delta][x ^ 1] = -1
                mu, nu = self.find(gamma), self.find(delta)
                if self.table[mu][x] >= 0:
                    self._merge(nu, self.table[mu][x], queue)
                elif self.table[nu][x ^ 1] >= 0:
                    self._merge(mu, self.table[nu][x ^ 1], queue)
                else:
                    self.table[mu][x] = nu
                    self.table[nu][x ^ 1] = mu
                    self.deductions.append((mu, x))

    def scan(self, alpha: int, w: list[int], fill: bool) -> None:
        table = self.table
        f, i = alpha, 0
        b, j = alpha, len(w) - 1
        while True:
            while i <= j and table[f][w[i]] >= 0:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != alpha:
                    self.coincidence(f, alpha)
                return
            while j >= i and table[b][w[j] ^ 1] >= 0:
                b = table[b][w[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                table[f][w[i]] = b
                table[b][w[i] ^ 1] = f
                self.deductions.append((f, w[i]))
                return
            if not fill:
                return
            self.define(f, w[i])

    def process_deductions(self) -> None:
        while self.deductions:
            c, x = self.deductions.popleft()
            for rot_first, c0 in ((x, c), (x ^ 1, self.table[c][x])):
                if c0 < 0 or not self.alive(c0):
                    continue
                for rot in self.rotations[rot_first]:
                    if not self.alive(c0):
                        break
                    self.scan(c0, rot, fill=False)

    def run(self, subgroup: list[list[int]]) -> list[list[int]]:
        for w in subgroup:
            if w:
                self.scan(self.find(0), w, fill=True)
                self.process_deductions()
        alpha = 0
        while alpha < len(self.table):
            for r in self.rels:
                if not self.alive(alpha):
                    break
                self.scan(alpha, r, fill=True)
                self.process_deductions()
            if self.alive(alpha):
                for x in range(self.ncols):
                    if self.table[alpha][x] < 0:
                        self.define(alpha, x)
                        self.process_deductions()
                        if not self.alive(alpha):
                            break
            alpha += 1
        live = [c for c in range(len(self.table)) if self.alive(c)]
        index = {c: k for k, c in enumerate(live)}
        return [[index[self.find(t)] for t in self.table[c]] for c in live]


def todd_coxeter(presentation: Presentation, subgroup_gens, max_cosets: int = 100_000) -> CosetTable:
    """Coset table of the subgroup generated by ``subgroup_gens``.

    Raises :class:`CosetOverflow` once more than ``max_cosets`` cosets are
    alive at the same time (index too large, or infinite).
    """
    if max_cosets < 1:
        raise ValueError("max_cosets must be positive")
    gens = presentation.generators
    enum = _Enumerator(presentation, max_cosets)
    rows = enum.run([encode(w, gens) for w in subgroup_gens])
    return CosetTable(gens, _canonical(rows))


def schreier_generators(table: CosetTable) -> list[str]:
    """Generators of the subgroup encoded by a complete table, from a BFS spanning tree."""
    gens = table.generators
    rep = {0: ""}
    todo = deque([0])
    tree = set()
    while todo:
        i = todo.popleft()
        for col in range(2 * len(gens)):
            j = int(table.table[i, col])
            if j not in rep:
                letter = gens[col >> 1] if col % 2 == 0 else gens[col >> 1].upper()
                rep[j] = rep[i] + letter
                tree.add((i, col))
                tree.add((j, col ^ 1))
                todo.append(j)
    out = []
    for i in range(table.n):
        for g_idx, g in enumerate(gens):
            col = 2 * g_idx
            if (i, col) in tree:
                continue
            j = int(table.table[i, col])
            w = free_reduce(rep[i] + g + invert(rep[j]))
            if w:
                out.append(w)
    return out


# ------------------------------------------------------------------ low index


def _rotation_data(presentation: Presentation):
    gens = presentation.generators
    ncols = 2 * len(gens)
    rotations: list[list[int]] = []
    for r in presentation.relators:
        r = cyclic_reduce(r)
        if not r:
            continue
        enc = encode(r, gens)
        for w in (enc, [x ^ 1 for x in reversed(enc)]):
            for k in range(len(w)):
                rotations.append(w[k:] + w[:k])
    rotations.sort(key=lambda w: w[0])
    flat, starts, lens = _flatten(rotations) if rotations else (
        np.zeros(0, np.int32), np.zeros(0, np.int32), np.zeros(0, np.int32))
    firsts = np.array([w[0] for w in rotations], dtype=np.int64)
    col_ptr = np.searchsorted(firsts, np.arange(ncols + 1)).astype(np.int32)
    col_rots = np.arange(len(rotations), dtype=np.int32)
    return flat, starts, lens, col_ptr, col_rots


def low_index(presentation: Presentation, n_max: int, *, kernel=None) -> list[CosetTable]:
    """Every subgroup of index at most ``n_max``, once each, as canonical tables.

    Sorted by index, then by the flattened table.
    """
    if n_max < 1:
        raise ValueError("n_max must be positive")
    search = kernel or _kernels.low_index_search
    gens = presentation.generators
    ncols = 2 * len(gens)
    flat, starts, lens, col_ptr, col_rots = _rotation_data(presentation)
    tables, sizes = search(n_max, ncols, flat, starts, lens, col_ptr, col_rots)
    found = {}
    for t, n in zip(tables, sizes):
        ct = CosetTable(gens, np.array(t[:n]))
        found[ct.key()] = ct
    if len(found) != len(tables):
        raise AssertionError("low-index search produced a duplicate table")
    return [found[k] for k in sorted(found)]


# ---------------------------------------------------------- homomorphisms


@dataclass(frozen=True)
class Homomorphism:
    generators: tuple[str, ...]
    images: tuple[tuple[int, ...], ...]  # 0-based permutations, right action

    @property
    def degree(self) -> int:
        return len(self.images[0]) if self.images else 0

    def image(self, w: str) -> tuple[int, ...]:
        perm = list(range(self.degree))
        index = {g: i for i, g in enumerate(self.generators)}
        for ch in w:
            p = self.images[index[ch.lower()]]
            if ch.isupper():
                inv = [0] * len(p)
                for i, x in enumerate(p):
                    inv[x] = i
                p = inv
            perm = [p[x] for x in perm]
        return tuple(perm)

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "images": {g: [x + 1 for x in p] for g, p in zip(self.generators, self.images)},
        }


def perm_order(p) -> int:
    seen = [False] * len(p)
    order = 1
    for i in range(len(p)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        order = order * length // math.gcd(order, length)
    return order


def enumerate_homs(presentation: Presentation, degree: int, *, cap: int = HOM_DEGREE_CAP,
                   kernel=None) -> list[Homomorphism]:
    """All homomorphisms into the symmetric group of the given degree.

    Order: generator images enumerated lexicographically (``itertools``
    permutation order), last generator fastest.
    """
    if degree < 1:
        raise ValueError("degree must be positive")
    if degree > cap:
        raise CapExceeded(f"degree {degree} exceeds the cap {cap}")
    search = kernel or _kernels.hom_search
    gens = presentation.generators
    perm_list = list(itertools.permutations(range(degree)))
    perms = np.array(perm_list, dtype=np.int64)
    where = {p: i for i, p in enumerate(perm_list)}
    inv_idx = np.empty(len(perm_list), dtype=np.int64)
    for i, p in enumerate(perm_list):
        inv = [0] * degree
        for a, b in enumerate(p):
            inv[b] = a
        inv_idx[i] = where[tuple(inv)]
    rels = [encode(r, gens) for r in presentation.relators if r]
    if rels:
        flat, starts, lens = _flatten(rels)
    else:
        flat, starts, lens = (np.zeros(0, np.int32),) * 3
    hits = search(perms, inv_idx, len(gens), flat.astype(np.int64), starts.astype(np.int64),
                  lens.astype(np.int64))
    return [Homomorphism(gens, tuple(perm_list[int(i)] for i in row)) for row in hits]


# ------------------------------------------------------------ abelianization


def exponent_matrix(presentation: Presentation) -> list[list[int]]:
    return [exponent_sums(r, presentation.generators) for r in presentation.relators]


def abelianization(presentation: Presentation) -> list[int]:
    """Invariant factors ``d1 | d2 | ...`` of the abelianization; 0 stands for Z."""
    return invariant_factors(exponent_matrix(presentation), presentation.ngens)
