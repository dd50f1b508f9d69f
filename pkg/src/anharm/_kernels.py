"""Float64 Jacobi eigensolver kernels.

Two interchangeable implementations of the same cyclic-Jacobi sweep: a
numba-compiled loop kernel and a vectorized pure-numpy one.  Selection
order: explicit ``backend`` argument, then the ANHARM_BACKEND environment
variable (auto|numba|numpy), then auto.  Auto picks numba when it is
importable and falls back to numpy otherwise.

This lane exists for low-precision work (length scans, figure data)
where assembling thousands of small eigenproblems in MPFR would be
wasteful.  The arbitrary-precision path lives in eigen.py.
"""

from __future__ import annotations

import math
import os

import numpy as np

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False


def _sweep_py(a: np.ndarray, skip: float) -> float:
    """One cyclic Jacobi sweep in place; returns the largest |a_pq| seen."""
    n = a.shape[0]
    biggest = 0.0
    for p in range(n - 1):
        for q in range(p + 1, n):
            apq = a[p, q]
            aapq = abs(apq)
            if aapq > biggest:
                biggest = aapq
            if aapq <= skip:
                continue
            theta = (a[q, q] - a[p, p]) / (2.0 * apq)
            t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
            c = 1.0 / math.sqrt(t * t + 1.0)
            s = t * c
            for i in range(n):
                aip = a[i, p]
                aiq = a[i, q]
                a[i, p] = c * aip - s * aiq
                a[i, q] = s * aip + c * aiq
            for i in range(n):
                api = a[p, i]
                aqi = a[q, i]
                a[p, i] = c * api - s * aqi
                a[q, i] = s * api + c * aqi
            a[p, q] = 0.0
            a[q, p] = 0.0
    return biggest


if HAS_NUMBA:
    _sweep_numba = njit(cache=True)(_sweep_py)


def _sweep_numpy(a: np.ndarray, skip: float) -> float:
    """Same sweep with the O(n) inner updates as numpy slice operations."""
    n = a.shape[0]
    biggest = 0.0
    for p in range(n - 1):
        for q in range(p + 1, n):
            apq = a[p, q]
            aapq = abs(apq)
            if aapq > biggest:
                biggest = aapq
            if aapq <= skip:
                continue
            theta = (a[q, q] - a[p, p]) / (2.0 * apq)
            t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
            c = 1.0 / math.sqrt(t * t + 1.0)
            s = t * c
            colp = a[:, p].copy()
            colq = a[:, q].copy()
            a[:, p] = c * colp - s * colq
            a[:, q] = s * colp + c * colq
            rowp = a[p, :].copy()
            rowq = a[q, :].copy()
            a[p, :] = c * rowp - s * rowq
            a[q, :] = s * rowp + c * rowq
            a[p, q] = 0.0
            a[q, p] = 0.0
    return biggest


def resolve_backend(backend: str | None = None) -> str:
    """Resolve auto/numba/numpy to the backend that will actually run."""
    choice = backend or os.environ.get("ANHARM_BACKEND", "auto")
    if choice not in ("auto", "numba", "numpy"):
        raise ValueError(f"unknown backend {choice!r}; use auto, numba, or numpy")
    if choice == "auto":
        return "numba" if HAS_NUMBA else "numpy"
    if choice == "numba" and not HAS_NUMBA:
        raise RuntimeError("ANHARM_BACKEND=numba requested but numba is not installed")
    return choice


def eigvalsh_f64(
    matrix: np.ndarray,
    tol: float = 1e-13,
    max_sweeps: int = 60,
    backend: str | None = None,
) -> np.ndarray:
    """Sorted eigenvalues of a symmetric float64 matrix via cyclic Jacobi."""
    a = np.array(matrix, dtype=np.float64, copy=True)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    if n == 1:
        return a[0, :1].copy()
    sweep = _sweep_numba if resolve_backend(backend) == "numba" else _sweep_numpy
    norm = float(np.linalg.norm(a))
    if norm == 0.0:
        return np.zeros(n)
    skip = tol * norm / (2.0 * n * n)
    biggest = float("inf")
    for _ in range(max_sweeps):
        biggest = sweep(a, skip)
        if biggest <= skip:
            break
    else:
        raise RuntimeError(f"Jacobi failed to converge in {max_sweeps} sweeps (residual {biggest:.3e})")
    return np.sort(np.diag(a))
