"""Combinatorial 2-complexes, standard complexes, covers built from coset tables.

Faces store their boundary as a cycle of ``(edge id, direction)`` steps with
direction ``+1`` (traverse src -> dst) or ``-1`` (dst -> src).  Labels are
read off the edges, never stored on faces, because a cover has many edges
with the same label.
"""

from __future__ import annotations

import json
from collections import Counter, defaultdict
from dataclasses import dataclass

from .enumeration import CosetTable, encode
from .report import Report
from .words import Presentation

__all__ = [
    "CellMap",
    "Complex2",
    "Edge",
    "Face",
    "RelatorNotClosed",
    "TableIncomplete",
    "boundary_key",
    "build_cover_from_table",
    "euler_characteristic",
    "export_dot",
    "export_json",
    "import_json",
    "standard_complex",
    "verify_covering",
    "verify_isomorphism",
]

Step = tuple[int, int]


class TableIncomplete(ValueError):
    pass


class RelatorNotClosed(ValueError):
    pass


@dataclass(frozen=True)
class Edge:
    id: int
    src: int
    dst: int
    label: str


@dataclass(frozen=True)
class Face:
    id: int
    boundary: tuple[Step, ...]


@dataclass(frozen=True)
class Complex2:
    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]
    faces: tuple[Face, ...]

    @property
    def counts(self) -> tuple[int, int, int]:
        return len(self.vertices), len(self.edges), len(self.faces)

    def step_ends(self, step: Step) -> tuple[int, int]:
        e = self.edges[step[0]]
        return (e.src, e.dst) if step[1] > 0 else (e.dst, e.src)

    def open_faces(self) -> list[int]:
        """Ids of faces whose boundary is empty or not a closed edge path."""
        bad = []
        for f in self.faces:
            if not f.boundary or any(e >= len(self.edges) or d not in (1, -1) for e, d in f.boundary):
                bad.append(f.id)
                continue
            ends = [self.step_ends(s) for s in f.boundary]
            if any(ends[k][1] != ends[(k + 1) % len(ends)][0] for k in range(len(ends))):
                bad.append(f.id)
        return bad

    def validate(self) -> "Complex2":
        if self.vertices != tuple(range(len(self.vertices))):
            raise ValueError("vertex ids must be 0..V-1")
        for k, e in enumerate(self.edges):
            if e.id != k or not (0 <= e.src < len(self.vertices) and 0 <= e.dst < len(self.vertices)):
                raise ValueError(f"bad edge {e}")
        for k, f in enumerate(self.faces):
            if f.id != k:
                raise ValueError(f"face id {f.id} at position {k}")
        bad = self.open_faces()
        if bad:
            raise ValueError(f"face {bad[0]} does not bound a closed edge path")
        return self

    def boundary_word(self, face_id: int) -> str:
        return "".join(
            self.edges[e].label if d > 0 else self.edges[e].label.upper()
            for e, d in self.faces[face_id].boundary
        )


def _least_rotation(seq: tuple) -> tuple:
    if not seq:
        return seq
    return min(seq[k:] + seq[:k] for k in range(len(seq)))


def reverse_boundary(boundary) -> tuple[Step, ...]:
    return tuple((e, -d) for e, d in reversed(boundary))


def boundary_key(boundary, *, allow_reversal: bool = False) -> tuple:
    """Canonical form of a boundary cycle: least rotation (optionally also of the reversal)."""
    key = _least_rotation(tuple(boundary))
    if allow_reversal:
        key = min(key, _least_rotation(reverse_boundary(boundary)))
    return key


def euler_characteristic(c: Complex2) -> int:
    v, e, f = c.counts
    return v - e + f


def standard_complex(p: Presentation) -> Complex2:
    """One vertex, a loop per generator, a face per relator spelling it."""
    edges = tuple(Edge(i, 0, 0, g) for i, g in enumerate(p.generators))
    faces = []
    for k, r in enumerate(p.relators):
        if not r:
            raise ValueError(f"relator {k} is empty; a face needs a nonempty boundary")
        faces.append(Face(k, tuple((col >> 1, -1 if col & 1 else 1) for col in encode(r, p.generators))))
    return Complex2((0,), edges, tuple(faces)).validate()


@dataclass(frozen=True)
class CellMap:
    """Cellular map: vertices, edges (with a flip flag), faces."""

    vertex: dict[int, int]
    edge: dict[int, tuple[int, bool]]
    face: dict[int, int]

    def image_boundary(self, boundary) -> tuple[Step, ...]:
        out = []
        for e, d in boundary:
            img, flip = self.edge[e]
            out.append((img, -d if flip else d))
        return tuple(out)

    def inverse(self) -> "CellMap":
        return CellMap(
            {v: k for k, v in self.vertex.items()},
            {img: (k, flip) for k, (img, flip) in self.edge.items()},
            {v: k for k, v in self.face.items()},
        )


def build_cover_from_table(p: Presentation, table: CosetTable) -> tuple[Complex2, CellMap]:
    """The finite cover of ``standard_complex(p)`` for the subgroup ``table`` encodes.

    Vertex ``i`` is coset ``i``; edge ``i*ngens + g`` runs from ``i`` to
    ``i.g``; face ``i*nrels + r`` is relator ``r`` read from coset ``i``.
    The returned map is the covering projection.
    """
    if table.generators != p.generators:
        raise ValueError("table and presentation use different generators")
    if not table.is_complete():
        raise TableIncomplete("coset table is not complete")
    n, ng = table.n, p.ngens
    ends = table.trace_all(list(p.relators))
    for r, row in enumerate(ends):
        for i, end in enumerate(row):
            if end != i:
                raise RelatorNotClosed(f"relator {p.relators[r]!r} does not close at coset {i + 1}")
    edges = []
    for i in range(n):
        for g in range(ng):
            edges.append(Edge(i * ng + g, i, int(table.table[i, 2 * g]), p.generators[g]))
    faces = []
    for i in range(n):
        for r, word in enumerate(p.relators):
            steps = []
            at = i
            for col in encode(word, p.generators):
                g = col >> 1
                if col & 1:
                    at = int(table.table[at, col])
                    steps.append((at * ng + g, -1))
                else:
                    steps.append((at * ng + g, 1))
                    at = int(table.table[at, col])
            faces.append(Face(len(faces), tuple(steps)))
    cover = Complex2(tuple(range(n)), tuple(edges), tuple(faces)).validate()
    nr = len(p.relators)
    proj = CellMap(
        {i: 0 for i in range(n)},
        {e.id: (e.id % ng, False) for e in edges},
        {f.id: f.id % nr for f in faces},
    )
    return cover, proj


def _star(c: Complex2) -> dict[int, list[tuple[int, str]]]:
    star: dict[int, list[tuple[int, str]]] = defaultdict(list)
    for e in c.edges:
        star[e.src].append((e.id, "out"))
        star[e.dst].append((e.id, "in"))
    return star


def verify_covering(cover: Complex2, base: Complex2, m: CellMap, *, star_vertices=None,
                    suite: str = "covering") -> Report:
    """Check that ``m`` is a label- and direction-preserving covering map.

    With ``star_vertices`` the local checks run only at those cover vertices
    and the global preimage count is skipped (for finite pieces of infinite
    covers).
    """
    rep = Report(suite)
    partial = star_vertices is not None
    check_at = sorted(star_vertices) if partial else list(cover.vertices)

    missing = [("vertex", v) for v in cover.vertices if v not in m.vertex]
    missing += [("edge", e.id) for e in cover.edges if e.id not in m.edge]
    missing += [("face", f.id) for f in cover.faces if f.id not in m.face]
    rep.check("map is total", not missing, missing[:1])
    if missing:
        return rep

    bad_edge = None
    for e in cover.edges:
        img, flip = m.edge[e.id]
        if not (0 <= img < len(base.edges)):
            bad_edge = e.id
            break
        b = base.edges[img]
        if flip or b.label != e.label or m.vertex[e.src] != b.src or m.vertex[e.dst] != b.dst:
            bad_edge = e.id
            break
    rep.check("edges keep labels, directions and endpoints", bad_edge is None,
              None if bad_edge is None else {"edge": bad_edge})

    cover_star = _star(cover)
    base_star = _star(base)
    bad_vertex = None
    for v in check_at:
        image = Counter((m.edge[e][0], end) for e, end in cover_star[v])
        if image != Counter(base_star[m.vertex[v]]) or max(image.values(), default=1) > 1:
            bad_vertex = v
            break
    rep.check("vertex stars map bijectively", bad_vertex is None,
              None if bad_vertex is None else {"vertex": bad_vertex})

    bad_face = None
    for f in cover.faces:
        target = m.face[f.id]
        if not (0 <= target < len(base.faces)):
            bad_face = f.id
            break
        if boundary_key(m.image_boundary(f.boundary)) != boundary_key(base.faces[target].boundary):
            bad_face = f.id
            break
    rep.check("face boundaries map onto base boundaries", bad_face is None,
              None if bad_face is None else {"face": bad_face})

    if not partial:
        vdeg = Counter(m.vertex[v] for v in cover.vertices)
        edeg = Counter(m.edge[e.id][0] for e in cover.edges)
        fdeg = Counter(m.face[f.id] for f in cover.faces)
        degree = len(cover.vertices) // max(len(base.vertices), 1)
        witness = None
        for kind, cnt, total in (("vertex", vdeg, len(base.vertices)), ("edge", edeg, len(base.edges)),
                                 ("face", fdeg, len(base.faces))):
            for cell in range(total):
                if cnt.get(cell, 0) != degree:
                    witness = {kind: cell, "preimages": cnt.get(cell, 0), "degree": degree}
                    break
            if witness:
                break
        rep.check("every base cell has degree-many preimages", witness is None, witness)
        rep.counts["degree"] = degree
    return rep


def verify_isomorphism(c1: Complex2, c2: Complex2, m: CellMap, *, suite: str = "isomorphism") -> Report:
    """Check that ``m`` is a cellular isomorphism; edge flips and face reversal are allowed."""
    rep = Report(suite)
    for kind, src, dst, mapping in (
        ("vertex", c1.vertices, c2.vertices, m.vertex),
        ("edge", [e.id for e in c1.edges], [e.id for e in c2.edges], {k: v[0] for k, v in m.edge.items()}),
        ("face", [f.id for f in c1.faces], [f.id for f in c2.faces], m.face),
    ):
        witness = None
        seen: dict[int, int] = {}
        for cell in src:
            if cell not in mapping:
                witness = {kind: cell, "problem": "unmapped"}
                break
            img = mapping[cell]
            if img in seen:
                witness = {kind: cell, "problem": "not injective", "same_image_as": seen[img]}
                break
            seen[img] = cell
        if witness is None and set(seen) != set(dst):
            extra = sorted(set(dst) - set(seen))
            witness = {kind: extra[0] if extra else None, "problem": "not surjective"}
        rep.check(f"{kind} map is a bijection", witness is None, witness)
    if not rep.passed:
        return rep

    bad = None
    for e in c1.edges:
        img, flip = m.edge[e.id]
        f = c2.edges[img]
        ends = (m.vertex[e.src], m.vertex[e.dst])
        if ends != ((f.dst, f.src) if flip else (f.src, f.dst)):
            bad = e.id
            break
    rep.check("edge endpoints agree with flip flags", bad is None, None if bad is None else {"edge": bad})

    bad = None
    for face in c1.faces:
        image = boundary_key(m.image_boundary(face.boundary), allow_reversal=True)
        target = boundary_key(c2.faces[m.face[face.id]].boundary, allow_reversal=True)
        if image != target:
            bad = face.id
            break
    rep.check("face boundaries map onto image boundaries", bad is None, None if bad is None else {"face": bad})
    return rep


# --------------------------------------------------------------------- export


def export_json(c: Complex2) -> str:
    data = {
        "vertices": list(c.vertices),
        "edges": [{"id": e.id, "src": e.src, "dst": e.dst, "label": e.label} for e in c.edges],
        "faces": [
            {"id": f.id, "boundary": [{"edge": e, "dir": "+" if d > 0 else "-"} for e, d in f.boundary]}
            for f in c.faces
        ],
    }
    return json.dumps(data, indent=1)


def import_json(text: str) -> Complex2:
    data = json.loads(text)
    edges = tuple(Edge(int(e["id"]), int(e["src"]), int(e["dst"]), str(e["label"]))
                  for e in sorted(data["edges"], key=lambda e: e["id"]))
    faces = tuple(
        Face(int(f["id"]), tuple((int(s["edge"]), 1 if s["dir"] == "+" else -1) for s in f["boundary"]))
        for f in sorted(data["faces"], key=lambda f: f["id"])
    )
    return Complex2(tuple(sorted(int(v) for v in data["vertices"])), edges, faces).validate()


def export_dot(c: Complex2, names=None) -> str:
    """1-skeleton as a DOT multigraph; ``names`` optionally labels vertices."""
    lines = ["digraph complex {"]
    for v in c.vertices:
        label = f' [label="{names[v]}"]' if names is not None else ""
        lines.append(f"  v{v}{label};")
    for e in c.edges:
        lines.append(f'  v{e.src} -> v{e.dst} [label="{e.label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
