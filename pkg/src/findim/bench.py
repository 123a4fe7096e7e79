"""Benchmark comparing the compiled and pure-Python cover-search kernels.

Each workload runs the full dimension computation (bisection times exact
weighted-cover solves) with the kernel forced to each backend; fresh metric
objects per backend keep the candidate-pool caches cold and the comparison
fair. Invoke via `findim bench` or `python -m findim.bench`.
"""

from __future__ import annotations

import time
from typing import Callable

import numpy as np

from . import _kernel
from .dimension import hausdorff_dimension
from .families import cantor_level, carpet_level, sierpinski_level
from .metric import FiniteMetric, PointCloud, from_points


def _random_matrices(count: int, size: int, seed: int) -> list:
    rng = np.random.default_rng(seed)
    mats = []
    while len(mats) < count:
        pts = rng.uniform(size=(size, 2))
        m = from_points(PointCloud(points=pts, metric="l2"))
        mats.append(np.asarray(m.dist))
    return mats


def _workloads(count: int) -> list:
    loads: list = []
    for size in (8, 10, 12):
        mats = _random_matrices(count, size, seed=1000 + size)
        loads.append((f"random-clouds n={size} x{count}", mats))
    loads.append(("cantor level 5", [np.asarray(from_points(cantor_level(5)).dist)]))
    loads.append(("sierpinski level 3", [np.asarray(from_points(sierpinski_level(3)).dist)]))
    loads.append(("carpet level 1", [np.asarray(from_points(carpet_level(1)).dist)]))
    return loads


def _time_backend(mats: list, force_python: bool) -> tuple:
    t0 = time.perf_counter()
    values = []
    for mat in mats:
        m = FiniteMetric.from_matrix(mat, validate_triangle=False)
        values.append(hausdorff_dimension(m, force_python=force_python).value)
    return time.perf_counter() - t0, values


def run_benchmark(count: int = 20, repeats: int = 3, out: Callable = print) -> None:
    out(f"cover-search kernel benchmark (compiled available: {_kernel.HAVE_COMPILED})")
    out(f"{'workload':<28}{'python':>12}{'compiled':>12}{'speedup':>10}")
    for name, mats in _workloads(count):
        py_best = min(_time_backend(mats, True)[0] for _ in range(repeats))
        if _kernel.HAVE_COMPILED and not _kernel.FORCE_PURE:
            cy_time, cy_vals = _time_backend(mats, False)
            cy_best = min([cy_time] + [_time_backend(mats, False)[0]
                                       for _ in range(repeats - 1)])
            py_vals = _time_backend(mats, True)[1]
            if py_vals != cy_vals:
                raise AssertionError(f"backend results differ on {name}")
            out(f"{name:<28}{py_best:>11.4f}s{cy_best:>11.4f}s{py_best / cy_best:>9.1f}x")
        else:
            out(f"{name:<28}{py_best:>11.4f}s{'-':>12}{'-':>10}")


if __name__ == "__main__":
    run_benchmark()
