#!/usr/bin/env python3
"""Benchmark the compiled kernel core against the numpy fallback.

Times the raw sampling kernels and an end-to-end Monte Carlo risk run
under each backend, checks that the two agree, and prints a table.

    python3 benchmarks/bench_kernels.py [--count N] [--repeat K]
"""

import argparse
import math
import time

import numpy as np

from thresum._kernels import _purepy

try:
    from thresum._kernels import _core
except ImportError:
    _core = None


def best_time(fn, repeat):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


KERNEL_CASES = [
    ("uniforms", lambda mod, n: mod.uniforms(42, 0, 0, n)),
    ("poisson theta=2", lambda mod, n: mod.sample_poisson(2.0, 42, 0, 0, n)),
    ("poisson theta=20", lambda mod, n: mod.sample_poisson(20.0, 42, 0, 0, n)),
    ("geometric theta=0.5", lambda mod, n: mod.sample_geometric(0.5, 42, 0, 0, n)),
    ("exponential theta=1", lambda mod, n: mod.sample_exponential(1.0, 42, 0, 0, n)),
    ("uniform-scale theta=2", lambda mod, n: mod.sample_uniform_scale(2.0, 42, 0, 0, n)),
]


def check_agreement(n):
    """The integer pipelines must match exactly; log-based ones to ulps."""
    problems = []
    if not np.array_equal(_purepy.uniforms(42, 0, 0, n), _core.uniforms(42, 0, 0, n)):
        problems.append("uniforms differ")
    for theta in (0.5, 2.0, 20.0):
        a = _purepy.sample_poisson(theta, 42, 0, 0, n)
        b = _core.sample_poisson(theta, 42, 0, 0, n)
        if not np.array_equal(a, b):
            problems.append(f"poisson theta={theta} differs")
    a = _purepy.sample_geometric(0.5, 42, 0, 0, n)
    b = _core.sample_geometric(0.5, 42, 0, 0, n)
    if not np.array_equal(a, b):
        problems.append("geometric draws differ")
    a = _purepy.sample_exponential(1.0, 42, 0, 0, n)
    b = _core.sample_exponential(1.0, 42, 0, 0, n)
    if not np.allclose(a, b, rtol=1e-15, atol=0.0):
        problems.append("exponential draws differ beyond ulps")
    return problems


def mc_end_to_end():
    from thresum import (EstimatorKind, Family, FamilyParam, SQUARED_LOSS,
                         ThresholdRule, mc_risk)

    fams = [FamilyParam(Family.POISSON, 2.0), FamilyParam(Family.POISSON, 2.0)]
    return mc_risk(EstimatorKind.PLAIN, SQUARED_LOSS, fams, ThresholdRule(1.0),
                   200000, seed=5)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=10 ** 6,
                        help="draws per kernel timing (default 1e6)")
    parser.add_argument("--repeat", type=int, default=5,
                        help="timing repetitions, best-of (default 5)")
    args = parser.parse_args()

    if _core is None:
        print("compiled core not built; showing the numpy fallback only\n")

    n = args.count
    header = f"{'kernel':<24}{'numpy (ms)':>12}"
    if _core is not None:
        header += f"{'cython (ms)':>13}{'speedup':>9}"
    print(header)
    print("-" * len(header))
    for name, call in KERNEL_CASES:
        t_py = best_time(lambda: call(_purepy, n), args.repeat)
        line = f"{name:<24}{1e3 * t_py:>12.2f}"
        if _core is not None:
            t_cy = best_time(lambda: call(_core, n), args.repeat)
            line += f"{1e3 * t_cy:>13.2f}{t_py / t_cy:>9.2f}x"
        print(line)

    if _core is not None:
        problems = check_agreement(min(n, 200000))
        print()
        if problems:
            for p in problems:
                print(f"AGREEMENT FAILURE: {p}")
            raise SystemExit(1)
        print("backend agreement: uniforms and discrete draws identical, "
              "continuous draws within ulps")

    t_mc = best_time(mc_end_to_end, max(2, args.repeat // 2))
    from thresum import KERNEL_BACKEND
    print(f"\nend-to-end mc_risk (2e5 replicates, n=2, {KERNEL_BACKEND} backend): "
          f"{1e3 * t_mc:.1f} ms")


if __name__ == "__main__":
    main()
