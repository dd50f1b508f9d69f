"""Arbitrary-precision dense symmetric eigensolver and spectrum reports.

The solver is cyclic Jacobi with a rotation threshold.  At the matrix
sizes used here (n <= ~100) its O(n^3)-per-sweep cost is irrelevant next
to MPFR arithmetic, and it carries over to any precision unchanged.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import gmpy2
import numpy as np

from .mp import BigReal, big_to_str, workprec


class JacobiNonConvergence(RuntimeError):
    """Raised when the off-diagonal norm will not drop below tolerance."""

    def __init__(self, sweeps: int, residual):
        self.sweeps = sweeps
        self.residual = residual
        super().__init__(
            f"Jacobi did not converge in {sweeps} sweeps; relative off-diagonal residual {residual}"
        )


class SymMatrix:
    """Dense symmetric matrix of BigReal entries; only the upper triangle is stored.

    Symmetry therefore holds by construction: get(i, j) and get(j, i)
    return the same object.  ``meta`` records assembly provenance
    (basis, parity, L or Omega, potential, ...) for reports.
    """

    def __init__(self, n: int, precision: int, meta: dict | None = None):
        if n < 1:
            raise ValueError("matrix dimension must be >= 1")
        self.n = n
        self.precision = precision
        self.meta = dict(meta or {})
        zero = gmpy2.mpfr(0)
        self._rows = [[zero] * (n - i) for i in range(n)]

    def set(self, i: int, j: int, value: BigReal):
        if i > j:
            i, j = j, i
        self._rows[i][j - i] = value

    def get(self, i: int, j: int) -> BigReal:
        if i > j:
            i, j = j, i
        return self._rows[i][j - i]

    def trace(self) -> BigReal:
        with workprec(self.precision):
            total = gmpy2.mpfr(0)
            for i in range(self.n):
                total += self._rows[i][0]
            return total

    def to_dense(self) -> list[list[BigReal]]:
        return [[self.get(i, j) for j in range(self.n)] for i in range(self.n)]

    def to_numpy(self) -> np.ndarray:
        out = np.empty((self.n, self.n), dtype=np.float64)
        for i in range(self.n):
            for j in range(i, self.n):
                v = float(self.get(i, j))
                out[i, j] = v
                out[j, i] = v
        return out


@dataclass
class JacobiResult:
    eigenvalues: list
    eigenvectors: list | None
    sweeps: int


def jacobi_eigen(
    matrix: SymMatrix,
    tol: BigReal | None = None,
    want_vectors: bool = False,
    max_sweeps: int = 100,
) -> JacobiResult:
    """Eigenvalues (ascending) of a SymMatrix by cyclic Jacobi rotations.

    Terminates when the off-diagonal Frobenius norm drops below
    tol * ||M||_F; the default tol is 2^(-precision+16) relative.
    Raises JacobiNonConvergence after max_sweeps.  Eigenvectors, when
    requested, come back as a list of columns matching the sorted order.
    """
    n = matrix.n
    prec = matrix.precision
    with workprec(prec):
        a = [[gmpy2.mpfr(matrix.get(i, j)) for j in range(n)] for i in range(n)]
        v = None
        if want_vectors:
            v = [[gmpy2.mpfr(1 if i == j else 0) for j in range(n)] for i in range(n)]
        if tol is None:
            tol = gmpy2.exp2(-prec + 16)
        else:
            tol = gmpy2.mpfr(tol)

        norm = _frobenius(a, n)
        if gmpy2.is_zero(norm):
            order = list(range(n))
            vals = [a[i][i] for i in order]
            vecs = [[v[i][j] for i in range(n)] for j in order] if want_vectors else None
            return JacobiResult(vals, vecs, 0)
        stop = tol * norm
        # rotations on entries this small cannot push the off-norm back
        # above stop (off <= n * skip <= stop / 2), so skipping is safe
        skip = stop / (2 * n * n)

        sweeps = 0
        while sweeps < max_sweeps:
            off = _offdiag_norm(a, n)
            if off < stop:
                break
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = a[p][q]
                    if abs(apq) <= skip:
                        continue
                    theta = (a[q][q] - a[p][p]) / (2 * apq)
                    t = 1 / (abs(theta) + gmpy2.sqrt(theta * theta + 1))
                    if theta < 0:
                        t = -t
                    c = 1 / gmpy2.sqrt(t * t + 1)
                    s = t * c
                    tau = s / (1 + c)
                    _rotate(a, v, n, p, q, apq, t, s, tau)
            sweeps += 1
        else:
            off = _offdiag_norm(a, n)
            if off >= stop:
                raise JacobiNonConvergence(max_sweeps, big_to_str(off / norm))

        order = sorted(range(n), key=lambda i: (a[i][i], i))
        vals = [a[i][i] for i in order]
        vecs = None
        if want_vectors:
            vecs = [[v[i][j] for i in range(n)] for j in order]
        return JacobiResult(vals, vecs, sweeps)


def _rotate(a, v, n, p, q, apq, t, s, tau):
    """Apply one Jacobi rotation in the (p, q) plane, upper-triangle update."""
    h = t * apq
    a[p][p] -= h
    a[q][q] += h
    a[p][q] = gmpy2.mpfr(0)
    a[q][p] = gmpy2.mpfr(0)
    for i in range(n):
        if i == p or i == q:
            continue
        aip = a[i][p]
        aiq = a[i][q]
        nip = aip - s * (aiq + tau * aip)
        niq = aiq + s * (aip - tau * aiq)
        a[i][p] = nip
        a[p][i] = nip
        a[i][q] = niq
        a[q][i] = niq
    if v is not None:
        for i in range(n):
            vip = v[i][p]
            viq = v[i][q]
            v[i][p] = vip - s * (viq + tau * vip)
            v[i][q] = viq + s * (vip - tau * viq)


def _frobenius(a, n):
    acc = gmpy2.mpfr(0)
    for i in range(n):
        for j in range(n):
            acc += a[i][j] * a[i][j]
    return gmpy2.sqrt(acc)


def _offdiag_norm(a, n):
    acc = gmpy2.mpfr(0)
    for i in range(n):
        for j in range(i + 1, n):
            acc += a[i][j] * a[i][j]
    return gmpy2.sqrt(2 * acc)


@dataclass
class SpectrumReport:
    """Sorted eigenvalues plus optional per-level relative errors and run metadata."""

    eigenvalues: list
    relative_errors: list | None = None
    meta: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        d = {
            "eigenvalues": [big_to_str(e) for e in self.eigenvalues],
            "meta": {k: (big_to_str(v) if isinstance(v, BigReal) else v) for k, v in self.meta.items()},
        }
        if self.relative_errors is not None:
            d["relative_errors"] = [big_to_str(e) for e in self.relative_errors]
        return d


def relative_errors(computed: list, reference: list, precision: int) -> tuple[list, bool]:
    """Pairwise |(E - E_ref)/E_ref| on sorted lists.

    On length mismatch the common prefix is compared and the returned
    flag is True so callers can note it in metadata.
    """
    mismatch = len(computed) != len(reference)
    m = min(len(computed), len(reference))
    out = []
    with workprec(precision):
        for i in range(m):
            ref = gmpy2.mpfr(reference[i])
            if gmpy2.is_zero(ref):
                raise ValueError("reference eigenvalue is zero; relative error undefined")
            out.append(abs((gmpy2.mpfr(computed[i]) - ref) / ref))
    return out, mismatch


def convergence_series(pot, rule: str, n_list: list[int], precision: int, level: int = 0):
    """Ground-level error series over N for the trigonometric solver.

    Returns (rows, slope) where rows are (N, E, eps) tuples and slope is
    the least-squares slope of log10(eps) vs N (None for a single point
    or when a reference spectrum is unavailable).  Imports stay local to
    keep module loading acyclic.
    """
    from . import lengths, reference, trigbasis

    if sorted(n_list) != list(n_list):
        raise ValueError("N list must be ascending")
    rows = []
    for n_basis in n_list:
        length = lengths.length_for_rule(rule, pot, n_basis, precision)
        ham = trigbasis.assemble_even(pot, n_basis, length.L, precision)
        res = jacobi_eigen(ham.matrix)
        picked = res.eigenvalues[level]
        ref = reference.reference_eigenvalue(pot, "even", 2 * level, precision)
        eps = None
        if ref is not None:
            errs, _ = relative_errors([picked], [ref], precision)
            eps = errs[0]
        rows.append((n_basis, picked, eps))
    slope = None
    pts = [(n, float(gmpy2.log10(eps))) for n, _, eps in rows if eps is not None and eps > 0]
    if len(pts) >= 2:
        xs = np.array([p[0] for p in pts])
        ys = np.array([p[1] for p in pts])
        slope = float(np.polyfit(xs, ys, 1)[0])
    return rows, slope


def timed_solve(matrix: SymMatrix, max_sweeps: int = 100) -> SpectrumReport:
    """jacobi_eigen wrapped with wall-time and sweep-count metadata."""
    t0 = time.perf_counter()
    res = jacobi_eigen(matrix, max_sweeps=max_sweeps)
    dt = time.perf_counter() - t0
    meta = dict(matrix.meta)
    meta.update({"precision": matrix.precision, "sweeps": res.sweeps, "wall_time_s": round(dt, 6)})
    return SpectrumReport(eigenvalues=res.eigenvalues, meta=meta)
