"""Time the numba kernels against their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--jobs N]

Both backends are imported from the same module, so one process compares
them; LRCMR_DISABLE_NUMBA only changes which pair the public names bind to.
"""

from __future__ import annotations

import argparse
import itertools
import time

import numpy as np

from lrcmr import kernels, mr
from lrcmr.codes import code_from_roots


def _best(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def cases():
    # rank of 4-column subsets of the [80,58] code's parity matrix over GF(81)
    big = mr.build_construction1(mr.MrParams(3, 4, 6, 3))
    subsets = np.array(list(itertools.islice(itertools.combinations(range(big.n), 4), 20000)), dtype=np.int64)
    f = big.field
    yield "rank_batch GF(81) 22x80, 20000 subsets", (
        lambda: kernels.rank_batch_numba(big.H.data, subsets, *f.kernel_args()),
        lambda: kernels.rank_batch_numpy(big.H.data, subsets, *f.kernel_args()),
    )

    small = mr.build_construction1(mr.MrParams(4, 2, 2, 2))
    g = small.field
    rs = code_from_roots(g, 15, range(1, 11))  # [15,5] Reed-Solomon, 16^5 codewords
    yield "min_weight GF(16) [15,5], 2^20 codewords", (
        lambda: kernels.min_weight_numba(rs.G.data, *g.kernel_args(), g.q),
        lambda: kernels.min_weight_numpy(rs.G.data, *g.kernel_args(), g.q),
    )

    rng = np.random.default_rng(0)
    A = rng.integers(0, f.q, size=(200, 200), dtype=np.int64)
    B = rng.integers(0, f.q, size=(200, 200), dtype=np.int64)
    yield "matmul GF(81) 200x200", (
        lambda: kernels.matmul_numba(A, B, *f.kernel_args()),
        lambda: kernels.matmul_numpy(A, B, *f.kernel_args()),
    )


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--jobs", type=int)
    args = ap.parse_args(argv)
    if not kernels.HAS_NUMBA:
        print("numba is not importable; nothing to compare")
        return 1
    kernels.set_jobs(args.jobs)
    print(f"{'kernel':45s} {'numba s':>10s} {'numpy s':>10s} {'speedup':>8s}")
    for name, (fast, slow) in cases():
        fast()  # compile outside the timed region
        t_fast, t_slow = _best(fast, args.repeat), _best(slow, args.repeat)
        print(f"{name:45s} {t_fast:10.4f} {t_slow:10.4f} {t_slow / t_fast:8.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
