"""Benchmark the integration kernels: pure Python/NumPy vs compiled.

Runs the two hot loops (orthonormal-frame RK4 and 2x2 fundamental-matrix
RK4) on identical inputs through every importable backend, reports wall
time per backend plus the speedup over the pure baseline, and checks
that the backends agree to near machine precision.

Usage:
    python3 benchmarks/bench_kernels.py [--n 200000] [--repeats 5]
"""

import argparse
import math
import time

import numpy as np

from curverec import ArcLengthGrid, ExpressionPair, profile_arrays
from curverec.kernels import available_backends


def _inputs(n: int):
    profile = ExpressionPair.from_text("1 + 0.3*sin(s)", "0.5 + 0.2*cos(s)")
    grid = ArcLengthGrid(0.0, 20.0 * math.pi, n)
    kn, tn = profile_arrays(profile, grid.nodes())
    km, tm = profile_arrays(profile, grid.mids())
    return (
        np.ascontiguousarray(kn),
        np.ascontiguousarray(tn),
        np.ascontiguousarray(km),
        np.ascontiguousarray(tm),
        grid.h,
    )


def _time(fn, repeats: int) -> float:
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=200_000, help="grid intervals (even)")
    parser.add_argument("--repeats", type=int, default=5, help="timing repeats; best is kept")
    args = parser.parse_args()
    n = args.n + (args.n % 2)

    kn, tn, km, tm, h = _inputs(n)
    frame0 = np.eye(3)
    backends = available_backends()
    print(f"backends: {', '.join(backends)}   grid intervals: {n}")

    results = {}
    for name, module in backends.items():
        frame_t = _time(lambda m=module: m.frame_rk4(kn, tn, km, tm, h, frame0), args.repeats)
        fund_t = _time(lambda m=module: m.fundamental_rk4(kn, tn, km, tm, h, 1.0), args.repeats)
        results[name] = (frame_t, fund_t)
        print(f"{name:>9}: frame_rk4 {frame_t * 1e3:9.2f} ms   fundamental_rk4 {fund_t * 1e3:9.2f} ms")

    if "compiled" in results:
        pf, pu = results["pure"]
        cf, cu = results["compiled"]
        print(f"{'speedup':>9}: frame_rk4 {pf / cf:8.1f}x    fundamental_rk4 {pu / cu:8.1f}x")

        pure = available_backends()["pure"]
        compiled = available_backends()["compiled"]
        frame_gap = np.abs(
            pure.frame_rk4(kn, tn, km, tm, h, frame0)
            - compiled.frame_rk4(kn, tn, km, tm, h, frame0)
        ).max()
        fund_gap = np.abs(
            pure.fundamental_rk4(kn, tn, km, tm, h, 1.0)
            - compiled.fundamental_rk4(kn, tn, km, tm, h, 1.0)
        ).max()
        print(f"{'parity':>9}: frame {frame_gap:.3e}   fundamental {fund_gap:.3e}")
        if max(float(frame_gap), float(fund_gap)) > 1e-12:
            raise SystemExit("backend parity check failed")


if __name__ == "__main__":
    main()
