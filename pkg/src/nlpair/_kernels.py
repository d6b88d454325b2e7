"""Inner loops of the enumeration code.

Every kernel is an ordinary Python function over integer numpy arrays.  When
numba is importable and ``NL_DISABLE_NUMBA`` is unset, the public names are
bound to ``numba.njit`` compilations of the same functions; otherwise they are
the interpreted functions themselves.  ``*_py`` names always refer to the
interpreted versions (used by the benchmark and the path-agreement tests).

Table layout: generator ``i`` owns column ``2*i`` and its inverse column
``2*i + 1``, so ``col ^ 1`` is the inverse column.  Undefined entries are -1.
"""

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None

DISABLED = os.environ.get("NL_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}
USE_NUMBA = numba is not None and not DISABLED


def jit(fn):
    if USE_NUMBA:
        return numba.njit(cache=True)(fn)
    return fn


def _low_index_search(n_max, ncols, rot_flat, rot_start, rot_len, col_ptr, col_rots):
    """Enumerate all complete coset tables with at most ``n_max`` rows.

    Tables are produced directly in canonical (first-appearance) numbering,
    each subgroup once.  Returns ``(tables, sizes)`` where ``tables`` has
    shape ``(count, n_max, ncols)``.
    """
    table = np.full((n_max, ncols), -1, dtype=np.int32)
    cells = n_max * ncols
    trail_r = np.empty(cells, dtype=np.int32)
    trail_c = np.empty(cells, dtype=np.int32)
    q_r = np.empty(2 * cells + 2, dtype=np.int32)
    q_c = np.empty(2 * cells + 2, dtype=np.int32)
    cs_row = np.empty(cells + 1, dtype=np.int32)
    cs_col = np.empty(cells + 1, dtype=np.int32)
    cs_cand = np.empty(cells + 1, dtype=np.int32)
    cs_trail = np.empty(cells + 1, dtype=np.int32)
    cs_n = np.empty(cells + 1, dtype=np.int32)

    cap = 16
    out = np.full((cap, n_max, ncols), -1, dtype=np.int32)
    sizes = np.zeros(cap, dtype=np.int32)
    count = 0

    n = 1
    ttop = 0
    depth = 0
    descend = True
    while True:
        if descend:
            row = -1
            col = -1
            for r in range(n):
                for c in range(ncols):
                    if table[r, c] < 0:
                        row = r
                        col = c
                        break
                if row >= 0:
                    break
            if row < 0:
                if count == cap:
                    bigger = np.full((2 * cap, n_max, ncols), -1, dtype=np.int32)
                    bigger[:cap] = out
                    out = bigger
                    bigger_sizes = np.zeros(2 * cap, dtype=np.int32)
                    bigger_sizes[:cap] = sizes
                    sizes = bigger_sizes
                    cap *= 2
                out[count, :n] = table[:n]
                sizes[count] = n
                count += 1
                descend = False
                continue
            cs_row[depth] = row
            cs_col[depth] = col
            cs_cand[depth] = 0
            cs_trail[depth] = ttop
            cs_n[depth] = n
            depth += 1

        if depth == 0:
            break
        top = depth - 1
        row = cs_row[top]
        col = cs_col[top]
        base_n = cs_n[top]
        found = False
        while True:
            # restore the state of this choice point
            while ttop > cs_trail[top]:
                ttop -= 1
                table[trail_r[ttop], trail_c[ttop]] = -1
            n = base_n
            j = cs_cand[top]
            if j > base_n or (j == base_n and base_n >= n_max):
                break
            cs_cand[top] = j + 1
            if j < base_n and table[j, col ^ 1] >= 0:
                continue
            if j == base_n:
                n = base_n + 1
            table[row, col] = j
            table[j, col ^ 1] = row
            trail_r[ttop] = row
            trail_c[ttop] = col
            trail_r[ttop + 1] = j
            trail_c[ttop + 1] = col ^ 1
            ttop += 2
            qh = 0
            q_r[0] = row
            q_c[0] = col
            q_r[1] = j
            q_c[1] = col ^ 1
            qt = 2
            ok = True
            while qh < qt and ok:
                a = q_r[qh]
                x = q_c[qh]
                qh += 1
                for k in range(col_ptr[x], col_ptr[x + 1]):
                    rid = col_rots[k]
                    s = rot_start[rid]
                    length = rot_len[rid]
                    f = a
                    i = 0
                    while i < length:
                        nxt = table[f, rot_flat[s + i]]
                        if nxt < 0:
                            break
                        f = nxt
                        i += 1
                    if i == length:
                        if f != a:
                            ok = False
                            break
                        continue
                    b = a
                    jj = length - 1
                    while jj >= i:
                        nxt = table[b, rot_flat[s + jj] ^ 1]
                        if nxt < 0:
                            break
                        b = nxt
                        jj -= 1
                    if jj < i:
                        if f != b:
                            ok = False
                            break
                        continue
                    if jj == i:
                        y = rot_flat[s + i]
                        if table[b, y ^ 1] >= 0:
                            ok = False
                            break
                        table[f, y] = b
                        table[b, y ^ 1] = f
                        trail_r[ttop] = f
                        trail_c[ttop] = y
                        trail_r[ttop + 1] = b
                        trail_c[ttop + 1] = y ^ 1
                        ttop += 2
                        q_r[qt] = f
                        q_c[qt] = y
                        q_r[qt + 1] = b
                        q_c[qt + 1] = y ^ 1
                        qt += 2
            if ok:
                found = True
                break
        if found:
            descend = True
        else:
            depth -= 1
            descend = False
    return out[:count], sizes[:count]


def _trace_many(table, words_flat, word_start, word_len, starts):
    """End coset of word ``k`` traced from ``starts[k]``; -1 if it falls off."""
    m = word_start.shape[0]
    ends = np.empty(m, dtype=np.int32)
    for k in range(m):
        f = starts[k]
        s = word_start[k]
        for i in range(word_len[k]):
            f = table[f, words_flat[s + i]]
            if f < 0:
                break
        ends[k] = f
    return ends


def _hom_search(perms, inv_idx, ngens, rel_flat, rel_start, rel_len):
    """All tuples of permutation indices (one per generator) killing every relator.

    ``rel_flat`` uses the column encoding; ``inv_idx[p]`` is the index of the
    inverse of permutation ``p``.  Tuples come out in odometer order with the
    last generator varying fastest.
    """
    npts = perms.shape[1]
    total = perms.shape[0]
    nrel = rel_start.shape[0]
    choice = np.zeros(ngens, dtype=np.int64)
    cap = 16
    out = np.empty((cap, ngens), dtype=np.int64)
    count = 0
    while True:
        good = True
        for r in range(nrel):
            s = rel_start[r]
            for p in range(npts):
                q = p
                for i in range(rel_len[r]):
                    letter = rel_flat[s + i]
                    idx = choice[letter >> 1]
                    if letter & 1:
                        idx = inv_idx[idx]
                    q = perms[idx, q]
                if q != p:
                    good = False
                    break
            if not good:
                break
        if good:
            if count == cap:
                bigger = np.empty((2 * cap, ngens), dtype=np.int64)
                bigger[:cap] = out
                out = bigger
                cap *= 2
            out[count] = choice
            count += 1
        g = ngens - 1
        while g >= 0:
            choice[g] += 1
            if choice[g] < total:
                break
            choice[g] = 0
            g -= 1
        if g < 0:
            break
    return out[:count]


low_index_search_py = _low_index_search
trace_many_py = _trace_many
hom_search_py = _hom_search

low_index_search = jit(_low_index_search)
trace_many = jit(_trace_many)
hom_search = jit(_hom_search)
