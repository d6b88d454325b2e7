"""Compare the numba kernels with their interpreted twins.

    python benchmarks/bench_kernels.py            # default sizes
    python benchmarks/bench_kernels.py --quick    # small sizes, for smoke runs

The first compiled call is timed separately: it includes JIT compilation or
the load from numba's on-disk cache.
"""

import argparse
import time

from nlpair import _kernels
from nlpair.enumeration import enumerate_homs, low_index
from nlpair.words import builtin


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return time.perf_counter() - t0, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()

    if args.quick:
        jobs = [("low-index bs35 <= 7", lambda k: low_index(builtin("bs35"), 7, kernel=k),
                 _kernels.low_index_search, _kernels.low_index_search_py),
                ("homs bs35 -> S_5", lambda k: enumerate_homs(builtin("bs35"), 5, kernel=k),
                 _kernels.hom_search, _kernels.hom_search_py)]
    else:
        jobs = [("low-index bs35 <= 10", lambda k: low_index(builtin("bs35"), 10, kernel=k),
                 _kernels.low_index_search, _kernels.low_index_search_py),
                ("low-index h_minus <= 5", lambda k: low_index(builtin("h_minus"), 5, kernel=k),
                 _kernels.low_index_search, _kernels.low_index_search_py),
                ("homs bs35 -> S_6", lambda k: enumerate_homs(builtin("bs35"), 6, kernel=k),
                 _kernels.hom_search, _kernels.hom_search_py)]

    print(f"numba active: {_kernels.USE_NUMBA}")
    print(f"{'workload':26s} {'first':>9s} {'compiled':>9s} {'python':>9s} {'speedup':>8s}")
    for name, run, fast, slow in jobs:
        first, _ = timed(lambda: run(fast))
        t_fast, a = timed(lambda: run(fast))
        t_slow, b = timed(lambda: run(slow))
        assert len(a) == len(b), name
        print(f"{name:26s} {first:9.3f} {t_fast:9.3f} {t_slow:9.3f} {t_slow / max(t_fast, 1e-9):7.1f}x")


if __name__ == "__main__":
    main()
