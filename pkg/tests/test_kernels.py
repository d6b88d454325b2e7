import os
import subprocess
import sys

import numpy as np
import pytest

from nlpair import _kernels
from nlpair.enumeration import _flatten, encode, enumerate_homs, low_index
from nlpair.words import builtin, parse_presentation

CASES = [("bs35", 6), ("torus", 5), ("klein", 5), ("h_minus", 3), ("groupQ", 3)]


@pytest.mark.parametrize("name, n_max", CASES)
def test_low_index_paths_agree(name, n_max):
    p = builtin(name)
    fast = low_index(p, n_max, kernel=_kernels.low_index_search)
    slow = low_index(p, n_max, kernel=_kernels.low_index_search_py)
    assert fast == slow


@pytest.mark.parametrize("name, degree", [("bs35", 4), ("torus", 3), ("h_plus", 3)])
def test_hom_paths_agree(name, degree):
    p = builtin(name)
    fast = enumerate_homs(p, degree, kernel=_kernels.hom_search)
    slow = enumerate_homs(p, degree, kernel=_kernels.hom_search_py)
    assert fast == slow


def test_trace_paths_agree():
    p = builtin("bs35")
    t = low_index(p, 5)[-1]
    words = [encode(w, p.generators) for w in ("cdCD", "DcccdCCCCC", "d", "CCd")]
    flat, starts, lens = _flatten(words)
    n = t.n
    args = (t.table, flat, np.repeat(starts, n), np.repeat(lens, n),
            np.tile(np.arange(n, dtype=np.int32), len(words)))
    assert np.array_equal(_kernels.trace_many(*args), _kernels.trace_many_py(*args))


def test_relatorless_presentation_in_both_paths():
    p = parse_presentation("< a, b | >")
    fast = low_index(p, 3, kernel=_kernels.low_index_search)
    slow = low_index(p, 3, kernel=_kernels.low_index_search_py)
    # subgroups of index <= 3 in F2: 1 + 3 + 13
    assert fast == slow and len(fast) == 17


def test_env_flag_selects_interpreted_path():
    code = "from nlpair import _kernels as k; print(k.USE_NUMBA, k.low_index_search is k.low_index_search_py)"
    env = dict(os.environ, NL_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["False", "True"]


def test_default_uses_numba_when_available():
    pytest.importorskip("numba")
    if _kernels.DISABLED:
        pytest.skip("NL_DISABLE_NUMBA set for this run")
    assert _kernels.USE_NUMBA
    assert _kernels.low_index_search is not _kernels.low_index_search_py
