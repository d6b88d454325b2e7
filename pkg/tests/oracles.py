"""Independent reference computations used as test oracles.

Nothing here imports the enumeration kernels: homomorphisms are counted by
plain itertools brute force, and subgroup counts follow from them through
the transitive-action recurrence.
"""

import itertools
from fractions import Fraction
from math import factorial


def _apply(word, gens, perms, point):
    for ch in word:
        p = perms[gens.index(ch.lower())]
        point = p[point] if ch.islower() else p.index(point)
    return point


def brute_hom_count(presentation, degree):
    gens = presentation.generators
    pts = range(degree)
    count = 0
    for perms in itertools.product(itertools.permutations(pts), repeat=len(gens)):
        if all(_apply(r, gens, perms, x) == x for r in presentation.relators for x in pts):
            count += 1
    return count


def subgroup_counts_from_homs(homs):
    """``homs[k-1] = |Hom(G, S_k)|``  ->  number of index-k subgroups, k = 1..len(homs).

    a_n = h_n/(n-1)! - sum_{k<n} h_{n-k} a_k / (n-k)!   (with h_0 = 1).
    """
    h = [1] + list(homs)
    a = [0]
    for n in range(1, len(h)):
        val = Fraction(h[n], factorial(n - 1))
        for k in range(1, n):
            val -= Fraction(h[n - k] * a[k], factorial(n - k))
        assert val.denominator == 1
        a.append(int(val))
    return a[1:]


def sublattice_count(n):
    """Index-n subgroups of Z^2, one per Hermite normal form [[p, q], [0, r]], p r = n, 0 <= q < p."""
    return sum(p for p in range(1, n + 1) if n % p == 0)


def word_in_perm_image(presentation, perms, word):
    return [_apply(word, presentation.generators, perms, x) for x in range(len(perms[0]))]
