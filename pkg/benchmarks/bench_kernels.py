"""Time the numba kernels against the numpy fallback.

Run with ``python3 benchmarks/bench_kernels.py``.  Each kernel is fed the
same random edge list at several sizes and the best of a few repeats is
reported.  The numba column is skipped when numba is not installed.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from epimc import _kernels


def _edges(rng, n, m):
    keys = np.unique(rng.integers(0, n * n, size=m))
    return (keys // n).astype(np.int64), (keys % n).astype(np.int64)


def _inputs(n, seed):
    rng = np.random.default_rng(seed)
    src, dst = _edges(rng, n, 8 * n)
    e = src.shape[0]
    return {
        "box": (n, src, dst, rng.random(e) < 0.7, rng.random(n) < 0.5),
        "survive": (src, dst, rng.random(e) < 0.7, rng.random(n) < 0.5, rng.random(e) < 0.5),
        "gather": (rng.integers(-1, e, size=e).astype(np.int64), rng.random(e) < 0.7),
        "successor_blocks": (n, 16, src, dst, rng.integers(0, 16, size=n).astype(np.int64)),
    }


def _best(fn, args, repeats):
    fn(*args)
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[1_000, 10_000, 100_000])
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    backends = {"numpy": _kernels.NUMPY_KERNELS}
    if _kernels.NUMBA_KERNELS is not None:
        backends["numba"] = _kernels.NUMBA_KERNELS
    header = f"{'kernel':<18}{'worlds':>9}" + "".join(f"{b + ' ms':>12}" for b in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for n in args.sizes:
        for name, inputs in _inputs(n, args.seed).items():
            times = [_best(k[name], inputs, args.repeats) for k in backends.values()]
            row = f"{name:<18}{n:>9}" + "".join(f"{1e3 * t:>12.3f}" for t in times)
            if len(times) == 2:
                row += f"{times[0] / times[1]:>10.1f}"
            print(row)


if __name__ == "__main__":
    main()
