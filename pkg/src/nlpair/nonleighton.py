"""Finite pieces of the common cover of the two-cell complexes, the map between them,
and desk-scale checks of the finite-index facts behind the pair.

The cover of the standard complex of ``H_eps = < a, X | a^h a^-eps, R >`` used
here has the elements of ``H = < X | R >`` as vertices, the Cayley graph of H
as its X-edges, one ``a``-loop per vertex, a cell per R-relator cycle, and a
special cell for every cycle spelling ``h^-1 a h a^-eps``.  A ball of that
cover is the Cayley ball of H plus whatever vertices the relator traces from
it pass through, plus the neighbours of the ball ("padding").  Covering conditions are only asserted at the
interior vertices (the Cayley ball itself when padded).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import bsgroup
from .bsgroup import BS35, INTEGERS, BsElement, GroupModel, cayley_ball, h_parity, multiply, normal_form
from .complex2 import (
    CellMap,
    Complex2,
    Edge,
    Face,
    boundary_key,
    standard_complex,
    verify_covering,
    verify_isomorphism,
)
from .enumeration import abelianization, enumerate_homs, fixes_coset_one, low_index, perm_order
from .report import Report
from .words import H_HAT, Presentation, builtin, cyclic_reduce, invert, special_relator

__all__ = [
    "CoverBall",
    "PhiMap",
    "abelian_consistency_check",
    "build_cover_ball",
    "build_phi",
    "lemma_bottle_consequence_check",
    "lemma_commutator_check",
    "torus_klein_demo",
    "verify_partial_cover",
    "verify_phi",
]


@dataclass
class CoverBall:
    eps: int
    radius: int
    model: GroupModel
    h_word: str
    h: BsElement
    presentation: Presentation          # H_eps; relator 0 is the special one
    elements: list[BsElement]           # vertex id -> group element
    index: dict[BsElement, int]
    core: frozenset[int]
    interior: frozenset[int]
    complex: Complex2
    x_edge: dict[tuple[int, str], int]  # (vertex, generator) -> outgoing edge
    a_loop: list[int]                   # vertex -> its a-loop edge id
    a_forward: list[bool]
    cell_kind: list[str]                # "special" | "nonspecial"
    cell_base: list[int]                # special: vertex carrying a positive a; else trace start
    cell_relator: list[int]             # index into presentation.relators

    def name(self, v: int) -> str:
        return self.elements[v].canonical(self.model)

    @property
    def special_cells(self) -> list[int]:
        return [f for f, k in enumerate(self.cell_kind) if k == "special"]


def _trace_elements(start: BsElement, word: str, model: GroupModel) -> list[BsElement]:
    """Elements visited while reading ``word`` from ``start``; ``a`` letters stay put."""
    steps = {ch: normal_form(ch, model) for ch in model.letters}
    out = [start]
    at = start
    for ch in word:
        if ch.lower() != "a":
            at = multiply(at, steps[ch], model)
        out.append(at)
    return out


def build_cover_ball(eps: int, radius: int, *, model: GroupModel = BS35, h_word: str = H_HAT,
                     relators=None, pad: bool = True, cap: int = bsgroup.BALL_RADIUS_CAP) -> CoverBall:
    """Ball of radius ``radius`` in the cover of the standard complex of ``H_eps``.

    For every core vertex ``v`` this adds the special cell whose positive
    ``a``-loop sits at ``v`` (read from ``v h``) and, for every relator of H,
    the cell read from ``v``.  Without padding, cells whose trace leaves the
    Cayley ball are dropped and the interior shrinks to radius - 1.
    """
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    if relators is None:
        relators = builtin("bs35").relators if model == BS35 else ()
    relators = tuple(relators)
    special = special_relator(h_word, eps)
    pres = Presentation(("a",) + model.gens, (special,) + relators)
    h = normal_form(h_word, model)

    ball = cayley_ball(model, radius, cap=cap)
    elements = list(ball.vertices)
    index = {v: i for i, v in enumerate(elements)}

    traces = []  # (kind, base element, relator idx, visited elements)
    for v in ball.vertices:
        traces.append(("special", v, 0, _trace_elements(multiply(v, h, model), special, model)))
        for k, r in enumerate(relators):
            traces.append(("nonspecial", v, k + 1, _trace_elements(v, r, model)))
    kept = []
    if pad:
        # stars of core vertices must be complete for the local covering checks
        for v in ball.vertices:
            for ch in model.letters:
                u = multiply(v, normal_form(ch, model), model)
                if u not in index:
                    index[u] = len(elements)
                    elements.append(u)
    for kind, base, rel, path in traces:
        if not pad and any(u not in index for u in path):
            continue
        for u in path:
            if u not in index:
                index[u] = len(elements)
                elements.append(u)
        kept.append((kind, base, rel, path))

    edges: list[Edge] = []
    x_edge: dict[tuple[int, str], int] = {}
    steps = {g: normal_form(g, model) for g in model.gens}
    for i, u in enumerate(elements):
        for g in model.gens:
            j = index.get(multiply(u, steps[g], model))
            if j is not None:
                x_edge[(i, g)] = len(edges)
                edges.append(Edge(len(edges), i, j, g))
    a_loop = []
    for i in range(len(elements)):
        a_loop.append(len(edges))
        edges.append(Edge(len(edges), i, i, "a"))

    faces: list[Face] = []
    seen: set[tuple] = set()
    kinds, bases, rels = [], [], []
    for kind, base, rel, path in kept:
        word = pres.relators[rel]
        boundary = []
        for k, ch in enumerate(word):
            u = index[path[k]]
            if ch == "a":
                boundary.append((a_loop[u], 1))
            elif ch == "A":
                boundary.append((a_loop[u], -1))
            elif ch.islower():
                boundary.append((x_edge[(u, ch)], 1))
            else:
                boundary.append((x_edge[(index[path[k + 1]], ch.lower())], -1))
        key = boundary_key(boundary)
        if key in seen:
            continue
        seen.add(key)
        faces.append(Face(len(faces), tuple(boundary)))
        kinds.append(kind)
        bases.append(index[base])
        rels.append(rel)

    cx = Complex2(tuple(range(len(elements))), tuple(edges), tuple(faces)).validate()
    core = frozenset(index[v] for v in ball.vertices)
    if pad:
        interior = core
    else:
        interior = frozenset(index[v] for v in ball.vertices if ball.distance[v] < radius)
    return CoverBall(eps, radius, model, h_word, h, pres, elements, index, core, interior, cx, x_edge,
                     a_loop, [True] * len(elements), kinds, bases, rels)


def _out_edges(cx: Complex2) -> dict[tuple[int, str], list[int]]:
    out: dict[tuple[int, str], list[int]] = {}
    for e in cx.edges:
        out.setdefault((e.src, e.label), []).append(e.id)
    return out


def _in_edges(cx: Complex2) -> dict[tuple[int, str], list[int]]:
    inc: dict[tuple[int, str], list[int]] = {}
    for e in cx.edges:
        inc.setdefault((e.dst, e.label), []).append(e.id)
    return inc


def _walk(cx: Complex2, out, inc, start: int, word: str):
    """Follow ``word`` along the edges of ``cx``; None if a step is missing or ambiguous."""
    at = start
    steps = []
    for ch in word:
        g = ch.lower()
        if ch.islower():
            cand = out.get((at, g), [])
            if len(cand) != 1:
                return None
            steps.append((cand[0], 1))
            at = cx.edges[cand[0]].dst
        else:
            cand = inc.get((at, g), [])
            if len(cand) != 1:
                return None
            steps.append((cand[0], -1))
            at = cx.edges[cand[0]].src
    return at, tuple(steps)


def _projection(ball: CoverBall, base: Complex2) -> CellMap:
    label_edge = {e.label: e.id for e in base.edges}
    cx = ball.complex
    return CellMap(
        {v: 0 for v in cx.vertices},
        {e.id: (label_edge[e.label], e.label == "a" and not ball.a_forward[e.src]) for e in cx.edges},
        {f.id: ball.cell_relator[f.id] for f in cx.faces},
    )


def verify_partial_cover(ball: CoverBall) -> Report:
    """Covering conditions at every interior vertex of a cover ball."""
    rep = Report(f"partial cover (eps={ball.eps:+d}, radius={ball.radius})")
    cx = ball.complex
    open_faces = cx.open_faces()
    rep.check("cell boundaries are closed edge paths", not open_faces,
              {"face": open_faces[0]} if open_faces else None)

    out, inc = _out_edges(cx), _in_edges(cx)
    interior = sorted(ball.interior)
    bad = None
    for v in interior:
        loops = [e for e in out.get((v, "a"), []) if cx.edges[e].dst == v]
        if len(loops) != 1 or len(out.get((v, "a"), [])) != 1 or len(inc.get((v, "a"), [])) != 1:
            bad = {"vertex": ball.name(v), "problem": "a-loop count"}
            break
        for g in ball.model.gens:
            if len(out.get((v, g), [])) != 1 or len(inc.get((v, g), [])) != 1:
                bad = {"vertex": ball.name(v), "problem": f"{g}-edges"}
                break
        if bad:
            break
    rep.check("one a-loop and one in/out edge per generator at interior vertices", bad is None, bad)

    # every relator, read from every interior vertex, bounds exactly one cell; the special
    # relator is read from its first a-letter so that its positive loop sits at the vertex
    face_count: dict[tuple, int] = {}
    for f in cx.faces:
        k = boundary_key(f.boundary)
        face_count[k] = face_count.get(k, 0) + 1
    anchored = []
    for r in ball.presentation.relators:
        k = next((i for i, ch in enumerate(r) if ch in "aA"), 0)
        anchored.append(r[k:] + r[:k])
    bad = None
    for v in interior:
        for r in anchored:
            walked = _walk(cx, out, inc, v, r)
            if walked is None or walked[0] != v:
                bad = {"vertex": ball.name(v), "relator": r, "problem": "trace does not close"}
                break
            n = face_count.get(boundary_key(walked[1]), 0)
            if n != 1:
                bad = {"vertex": ball.name(v), "relator": r, "problem": f"bounds {n} cells"}
                break
        if bad:
            break
    rep.check("each relator read from an interior vertex bounds exactly one cell", bad is None, bad)

    if bad is None and not open_faces:
        base = standard_complex(ball.presentation)
        cov = verify_covering(cx, base, _projection(ball, base), star_vertices=ball.interior)
        rep.extend(cov, "projection")
    rep.counts.update({
        "vertices": len(cx.vertices),
        "core": len(ball.core),
        "interior": len(ball.interior),
        "edges": len(cx.edges),
        "cells": len(cx.faces),
        "special_cells": len(ball.special_cells),
    })
    return rep


@dataclass
class PhiMap:
    cellmap: CellMap
    parity: dict[int, int] = field(default_factory=dict)


def build_phi(b1: CoverBall, b2: CoverBall, parity: dict[int, int] | None = None) -> PhiMap:
    """Identity on everything except a-loops, which flip on odd-parity vertices."""
    if b1.eps != 1 or b2.eps != -1:
        raise ValueError("build_phi maps the eps=+1 ball to the eps=-1 ball")
    if b1.elements != b2.elements or b1.model != b2.model or b1.h != b2.h:
        raise ValueError("cover balls have different vertex sets")
    if parity is None:
        by_el = h_parity(b1.elements, b1.h, b1.model)
        parity = {i: by_el[v] for i, v in enumerate(b1.elements)}
    edge_map = {}
    for e in b1.complex.edges:
        if e.label == "a":
            edge_map[e.id] = (b2.a_loop[e.src], parity[e.src] == 1)
        else:
            edge_map[e.id] = (b2.x_edge[(e.src, e.label)], False)
    where = {(k, b, r): f for f, (k, b, r) in enumerate(zip(b2.cell_kind, b2.cell_base, b2.cell_relator))}
    face_map = {}
    for f, key in enumerate(zip(b1.cell_kind, b1.cell_base, b1.cell_relator)):
        if key not in where:
            raise ValueError(f"no cell of the eps=-1 ball matches {key}")
        face_map[f] = where[key]
    vertex_map = {v: v for v in b1.complex.vertices}
    return PhiMap(CellMap(vertex_map, edge_map, face_map), dict(parity))


def _cyclic_match(word: str, relator: str) -> bool:
    """Same cyclic word up to rotation and inversion."""
    if len(word) != len(relator):
        return False
    doubled = relator + relator
    return word in doubled or invert(word) in doubled


def verify_phi(b1: CoverBall, b2: CoverBall, phi: PhiMap) -> Report:
    rep = Report(f"phi (radius={b1.radius})")
    iso = verify_isomorphism(b1.complex, b2.complex, phi.cellmap)
    rep.extend(iso, "isomorphism")

    target = cyclic_reduce(b2.presentation.relators[0])
    c2 = b2.complex
    bad = None
    for f in b1.special_cells:
        if b1.cell_base[f] not in b1.core:
            continue
        steps = phi.cellmap.image_boundary(b1.complex.faces[f].boundary)
        word = "".join(c2.edges[e].label if d > 0 else c2.edges[e].label.upper() for e, d in steps)
        if not _cyclic_match(word, target):
            bad = {"cell": f, "base": b1.name(b1.cell_base[f]), "image_word": word}
            break
    rep.check("special cells map onto cells spelling the eps=-1 relator", bad is None, bad)

    bad = None
    flips_total = 0
    for f in b1.special_cells:
        loops = {e for e, _ in b1.complex.faces[f].boundary if b1.complex.edges[e].label == "a"}
        flips = sum(phi.cellmap.edge[e][1] for e in loops)
        flips_total += flips
        if len(loops) != 2 or flips != 1:
            bad = {"cell": f, "base": b1.name(b1.cell_base[f]), "a_loops": len(loops), "flipped": flips}
            break
    rep.check("exactly one a-loop flipped on every special cell", bad is None, bad)

    # the same statement phrased through the coloring: parity(v) != parity(v h)
    bad = None
    steps = normal_form(b1.h_word, b1.model)
    for f in b1.special_cells:
        v = b1.cell_base[f]
        vh = b1.index[multiply(b1.elements[v], steps, b1.model)]
        if phi.parity[v] == phi.parity[vh]:
            bad = {"cell": f, "base": b1.name(v)}
            break
    rep.check("parity alternates across every special cell", bad is None, bad)

    for ball in (b1, b2):
        rep.extend(verify_partial_cover(ball), f"cover eps={ball.eps:+d}")
    rep.counts.update({
        "vertices": len(b1.complex.vertices),
        "core": len(b1.core),
        "special_cells": len(b1.special_cells),
        "cells": len(b1.complex.faces),
        "flipped_loops": sum(1 for v in phi.parity.values() if v),
    })
    return rep


def phi_check(radius: int, *, cap: int = bsgroup.BALL_RADIUS_CAP) -> Report:
    b1 = build_cover_ball(1, radius, cap=cap)
    b2 = build_cover_ball(-1, radius, cap=cap)
    return verify_phi(b1, b2, build_phi(b1, b2))


def torus_klein_demo(radius: int, *, perturb: bool = False) -> Report:
    """Strips of the square tilings covering the torus and the Klein bottle.

    H is the integers on ``b``, h = b and R is empty, so H_+1 is the torus
    group and H_-1 the Klein-bottle group.  With ``perturb`` the parity of
    the identity is inverted, which must break the map.
    """
    if radius < 1:
        raise ValueError("radius must be at least 1")
    kw = dict(model=INTEGERS, h_word="b", relators=(), pad=False, cap=max(radius, 1))
    b1 = build_cover_ball(1, radius, **kw)
    b2 = build_cover_ball(-1, radius, **kw)
    parity = None
    if perturb:
        phi0 = build_phi(b1, b2)
        parity = dict(phi0.parity)
        parity[0] ^= 1
    rep = verify_phi(b1, b2, build_phi(b1, b2, parity))
    rep.suite = f"torus/Klein demo (radius={radius})"
    cx = b1.complex
    rep.counts.update({
        "a_loops": sum(1 for e in cx.edges if e.label == "a"),
        "b_edges": sum(1 for e in cx.edges if e.label == "b"),
        "squares": len(cx.faces),
    })
    return rep


# ------------------------------------------------------- finite-index lemmas


def _table_witness(t) -> dict:
    return t.to_dict()


def lemma_commutator_check(n_max: int, hom_degree_max: int) -> Report:
    """[c^d, c] in every subgroup of BS(3,5) of index <= n_max; every permutation
    image of BS(3,5) of degree <= hom_degree_max kills it and gives c an order prime to 3."""
    rep = Report("commutator lemma")
    bs35 = builtin("bs35")
    tables = low_index(bs35, n_max)
    miss = next((t for t in tables if not fixes_coset_one(t, H_HAT)), None)
    rep.check(f"every subgroup of index <= {n_max} contains {H_HAT}", miss is None,
              None if miss is None else _table_witness(miss))
    by_index = {}
    for t in tables:
        by_index[t.n] = by_index.get(t.n, 0) + 1
    rep.counts["subgroups"] = len(tables)
    rep.counts["subgroups_by_index"] = {str(k): by_index.get(k, 0) for k in range(1, n_max + 1)}

    homs_by_degree = {}
    kill_bad = order_bad = None
    for deg in range(1, hom_degree_max + 1):
        homs = enumerate_homs(bs35, deg, cap=max(hom_degree_max, 1))
        homs_by_degree[str(deg)] = len(homs)
        ident = tuple(range(deg))
        for hom in homs:
            if kill_bad is None and hom.image(H_HAT) != ident:
                kill_bad = hom.to_dict()
            if order_bad is None and perm_order(hom.image("c")) % 3 == 0:
                order_bad = hom.to_dict()
    rep.check(f"every hom into S_k, k <= {hom_degree_max}, sends {H_HAT} to the identity",
              kill_bad is None, kill_bad)
    rep.check("no hom gives c an image of order divisible by 3", order_bad is None, order_bad)
    rep.counts["homs_by_degree"] = homs_by_degree
    return rep


def lemma_bottle_consequence_check(n_max: int) -> Report:
    """Every subgroup of H_-1 of index <= n_max contains both h and a^2."""
    rep = Report("bottle lemma consequences")
    tables = low_index(builtin("h_minus"), n_max)
    for word in (H_HAT, "aa"):
        miss = next((t for t in tables if not fixes_coset_one(t, word)), None)
        rep.check(f"every subgroup of index <= {n_max} contains {word}", miss is None,
                  None if miss is None else _table_witness(miss))
    by_index = {}
    for t in tables:
        by_index[t.n] = by_index.get(t.n, 0) + 1
    rep.counts["subgroups"] = len(tables)
    rep.counts["subgroups_by_index"] = {str(k): by_index.get(k, 0) for k in range(1, n_max + 1)}
    return rep


def abelian_consistency_check() -> Report:
    rep = Report("abelianization")
    got = {name: abelianization(builtin(name)) for name in ("groupA", "bs35", "groupQ")}
    rep.check("groupA is infinite cyclic", got["groupA"] == [0], {"groupA": got["groupA"]})
    rep.check("bs35 abelianizes to Z/2 x Z", got["bs35"] == [2, 0], {"bs35": got["bs35"]})
    rep.check("groupQ and bs35 have the same abelianization", got["groupQ"] == got["bs35"],
              {"groupQ": got["groupQ"], "bs35": got["bs35"]})
    rep.counts.update(got)
    return rep
