"""Time each numba kernel against its numpy fallback on a random degenerate graph.

    python benchmarks/bench_kernels.py --n 200000 --d 5 --repeat 5
"""
import argparse
import time

import numpy as np

from locount import kernels
from locount._accel import NUMBA_ENABLED
from locount.generators import GenSpec, gen_random_degenerate


def _best(fn, args, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times), out


def _same(a, b):
    if isinstance(a, tuple):
        return all(np.array_equal(x, y) for x, y in zip(a, b))
    return np.array_equal(a, b)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=100_000)
    ap.add_argument("--d", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if not NUMBA_ENABLED:
        print("numba disabled: both columns run the same python code")

    g = gen_random_degenerate(GenSpec(args.seed, args.n, args.d))
    indptr, indices = g.csr
    n = g.vertex_count
    removal, _ = kernels.peel_order(indptr, indices, n)
    position = np.empty(n, np.int64)
    position[removal[::-1]] = np.arange(n)
    rng = np.random.default_rng(args.seed)
    anchor = np.sort(rng.choice(n, size=min(8, n), replace=False)).astype(np.int64)
    table = rng.integers(0, 100, size=(max(1, n // 256), 1 << 8)).astype(np.int64)

    cases = {
        "peel_order": (indptr, indices, n),
        "left_csr": (indptr, indices, position),
        "superset_mobius": None,
        "trace_masks": (indptr, indices, anchor, np.arange(n, dtype=np.int64)),
    }
    print(f"{'kernel':<16} {'numba_s':>10} {'numpy_s':>10} {'speedup':>8} equal")
    for name, (fast, slow) in kernels.KERNEL_PAIRS.items():
        if name == "superset_mobius":
            fast_args, slow_args = (table.copy(), 8), (table.copy(), 8)
            fast(table.copy(), 8)  # compile outside the timing
            tf, of = _best(lambda t, s: fast(t.copy(), s), fast_args, args.repeat)
            ts, os_ = _best(lambda t, s: slow(t.copy(), s), slow_args, args.repeat)
        else:
            fast(*cases[name])
            tf, of = _best(fast, cases[name], args.repeat)
            ts, os_ = _best(slow, cases[name], args.repeat)
        print(f"{name:<16} {tf:>10.4f} {ts:>10.4f} {ts / max(tf, 1e-9):>8.1f} {_same(of, os_)}")


if __name__ == "__main__":
    main()
