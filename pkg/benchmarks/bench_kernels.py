"""Benchmark the numba and numpy boundary-trace kernels.

Times the raw kernel at several grid/basis sizes and an end-to-end sweep
(assemble + generalized eigensolve over an eps grid) under each backend.

    python benchmarks/bench_kernels.py
"""

import os
import time

import numpy as np

from steklov_pert import SolverConfig, kernels, solver, symmetric_grid
from steklov_pert.series import FourierSeries


def _boundary(num_points, num_modes):
    rho = FourierSeries(b=[0.0, 0.1, 0.0, 1.0], a=[0.0, 0.0, 0.2])
    theta = np.linspace(0, 2 * np.pi, num_points, endpoint=False)
    radius = 1.0 + 0.05 * rho.evaluate(theta)
    radius_prime = 0.05 * rho.derivative().evaluate(theta)
    scales = radius.max() ** -np.arange(num_modes + 1, dtype=float)
    return theta, radius, radius_prime, num_modes, scales


def _time(fn, *args, repeats=50):
    fn(*args)  # warm (jit compilation, caches)
    start = time.perf_counter()
    for _ in range(repeats):
        fn(*args)
    return (time.perf_counter() - start) / repeats


def bench_kernel():
    print("boundary-trace kernel (mean over 50 calls)")
    print(f"{'grid':>6} {'modes':>6} {'numpy':>12} {'numba':>12} {'speedup':>8}")
    for num_points, num_modes in ((512, 16), (512, 32), (1024, 48), (2048, 48)):
        args = _boundary(num_points, num_modes)
        t_numpy = _time(kernels.boundary_traces_numpy, *args)
        if kernels.HAVE_NUMBA:
            t_numba = _time(kernels.boundary_traces_numba, *args)
            ratio = f"{t_numpy / t_numba:7.2f}x"
            numba_col = f"{1e6 * t_numba:9.1f} us"
        else:
            numba_col, ratio = "missing", "-"
        print(f"{num_points:>6} {num_modes:>6} {1e6 * t_numpy:9.1f} us {numba_col:>12} {ratio:>8}")


def bench_sweep():
    rho = FourierSeries.cosine(3)
    grid = symmetric_grid(0.02, 9)
    cfg = SolverConfig(basis_size=24)
    backends = ["numpy"] + (["numba"] if kernels.HAVE_NUMBA else [])
    print("\nend-to-end sweep: 9 eps points, basis 24, 512 quadrature points")
    for backend in backends:
        os.environ["STEKLOV_BACKEND"] = backend
        solver.sweep(rho, grid, cfg, n_branches=6)  # warm
        start = time.perf_counter()
        for _ in range(5):
            solver.sweep(rho, grid, cfg, n_branches=6)
        elapsed = (time.perf_counter() - start) / 5
        print(f"  {backend:>6}: {1e3 * elapsed:8.1f} ms per sweep")
    os.environ.pop("STEKLOV_BACKEND", None)


if __name__ == "__main__":
    print(f"numba available: {kernels.HAVE_NUMBA}")
    bench_kernel()
    bench_sweep()
