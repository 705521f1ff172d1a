#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python twins.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

import numpy as np

from fockladder import _kernels_py, abgx, make_channel

try:
    from fockladder import _kernels_c
except ImportError:
    _kernels_c = None

GRID_SIZES = [(30, 500), (40, 2000), (40, 20000)]
MATVEC_SIZES = [1000, 20000, 200000]


def best_of(repeat, fn, *args):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times)


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    if _kernels_c is None:
        print("compiled extension not built; run `pip install -e .` first")
        return 1

    p = abgx(make_channel("amp", g=2.0, thermal_N=1.0))
    print(f"{'kernel':<34}{'python':>12}{'compiled':>12}{'speedup':>10}")

    for i_max, n_max in GRID_SIZES:
        t_py = best_of(args.repeat, _kernels_py.recurrence_grid,
                       p.alpha, p.beta, p.gamma, p.chi, i_max, n_max)
        t_c = best_of(args.repeat, _kernels_c.recurrence_grid,
                      p.alpha, p.beta, p.gamma, p.chi, i_max, n_max)
        name = f"recurrence_grid({i_max}, {n_max})"
        print(f"{name:<34}{t_py * 1e3:>10.2f}ms{t_c * 1e3:>10.2f}ms{t_py / t_c:>9.1f}x")

    rng = np.random.default_rng(0)
    for size in MATVEC_SIZES:
        v = rng.dirichlet(np.ones(size))
        t_py = best_of(args.repeat, _kernels_py.ladder_matvec,
                       p.alpha, p.beta, p.nu, v, size)
        t_c = best_of(args.repeat, _kernels_c.ladder_matvec,
                      p.alpha, p.beta, p.nu, v, size)
        name = f"ladder_matvec({size})"
        print(f"{name:<34}{t_py * 1e3:>10.2f}ms{t_c * 1e3:>10.2f}ms{t_py / t_c:>9.1f}x")

    a = _kernels_c.recurrence_grid(p.alpha, p.beta, p.gamma, p.chi, 30, 500)
    b = _kernels_py.recurrence_grid(p.alpha, p.beta, p.gamma, p.chi, 30, 500)
    print("backends bit-identical:", np.array_equal(a, b))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
