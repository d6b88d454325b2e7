"""Seeded randomized property checks, runnable from the command line."""

from __future__ import annotations

import random

from .bsgroup import BS35, normal_form
from .enumeration import low_index, schreier_generators, todd_coxeter
from .report import Report
from .snf import smith_with_transforms
from .words import builtin, cyclic_reduce, free_reduce, invert

__all__ = ["run_properties", "random_word", "det"]


def random_word(rng: random.Random, letters: str, max_len: int) -> str:
    return "".join(rng.choice(letters) for _ in range(rng.randint(0, max_len)))


def det(m) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    a = [list(map(int, row)) for row in m]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1] if n else 1


def _matmul(x, y):
    return [[sum(x[i][k] * y[k][j] for k in range(len(y))) for j in range(len(y[0]))] for i in range(len(x))]


def check_normal_form_invariance(rng: random.Random, cases: int) -> tuple[int, object]:
    """Insert a rotated relator (or its inverse) or a cancelling pair; the normal form must not move."""
    rel = "DcccdCCCCC"
    failures, witness = 0, None
    for _ in range(cases):
        w = random_word(rng, "cCdD", 16)
        k = rng.randrange(len(rel))
        r = rel[k:] + rel[:k]
        if rng.random() < 0.5:
            r = invert(r)
        if rng.random() < 0.25:
            g = rng.choice("cCdD")
            r = g + g.swapcase()
        pos = rng.randint(0, len(w))
        w2 = w[:pos] + r + w[pos:]
        if normal_form(w, BS35) != normal_form(w2, BS35):
            failures += 1
            witness = witness or {"word": w, "inserted": w2}
    return failures, witness


def check_free_reduction(rng: random.Random, cases: int) -> tuple[int, object]:
    failures, witness = 0, None
    for _ in range(cases):
        w = random_word(rng, "aAbBcC", 20)
        r = free_reduce(w)
        ok = free_reduce(r) == r and free_reduce(w + invert(w)) == ""
        ok = ok and cyclic_reduce(cyclic_reduce(w)) == cyclic_reduce(w)
        if not ok:
            failures += 1
            witness = witness or {"word": w}
    return failures, witness


def check_snf(rng: random.Random, cases: int) -> tuple[int, object]:
    failures, witness = 0, None
    for _ in range(cases):
        rows, cols = rng.randint(1, 4), rng.randint(1, 4)
        m = [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)]
        d, left, right = smith_with_transforms(m)
        diag = [d[i][i] for i in range(min(rows, cols))]
        off = any(d[i][j] for i in range(rows) for j in range(cols) if i != j)
        chain = all(
            (diag[i + 1] % diag[i] == 0) if diag[i] else diag[i + 1] == 0
            for i in range(len(diag) - 1)
        )
        ok = (not off and chain and all(x >= 0 for x in diag)
              and _matmul(_matmul(left, m), right) == d
              and abs(det(left)) == 1 and abs(det(right)) == 1)
        if not ok:
            failures += 1
            witness = witness or {"matrix": m, "D": d}
    return failures, witness


def check_tc_vs_low_index(names=("bs35", "torus", "klein"), n_max: int = 4) -> tuple[int, object]:
    """Re-enumerate each low-index subgroup from its Schreier generators."""
    failures, witness, total = 0, None, 0
    for name in names:
        p = builtin(name)
        for t in low_index(p, n_max):
            total += 1
            t2 = todd_coxeter(p, schreier_generators(t))
            if t2 != t:
                failures += 1
                witness = witness or {"presentation": name, "table": t.to_dict()}
    return failures, witness


def run_properties(seed: int = 0, cases: int = 10_000) -> Report:
    rng = random.Random(seed)
    rep = Report(f"property suite (seed={seed})")
    f, w = check_normal_form_invariance(rng, cases)
    rep.check(f"BS(3,5) normal form invariant under relator insertion ({cases} cases)", f == 0, w)
    f, w = check_free_reduction(rng, cases)
    rep.check(f"free and cyclic reduction idempotent ({cases} cases)", f == 0, w)
    n_snf = max(1, cases // 10)
    f, w = check_snf(rng, n_snf)
    rep.check(f"Smith form diagonal, divisibility chain, L M R = D ({n_snf} cases)", f == 0, w)
    f, w = check_tc_vs_low_index()
    rep.check("Todd-Coxeter reproduces every low-index table from its Schreier generators", f == 0, w)
    rep.counts["cases"] = cases
    return rep
