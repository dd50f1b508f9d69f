"""Harmonic-oscillator basis route for H = (1/2)(-d^2/dx^2 + omega^2 x^2) + lambda x^4.

The basis is the eigenfunctions of the auxiliary oscillator
(1/2)(-d^2 + Omega^2 x^2), whose frequency Omega is the nonlinear
variational parameter.  Matrix elements come from exact ladder-operator
algebra (never quadrature): with xi = a + a* and x = xi / sqrt(2 Omega),

    <n|xi^2|n>   = 2n + 1          <n|xi^2|n+2> = sqrt((n+1)(n+2))
    <n|xi^4|n>   = 6n^2 + 6n + 3   <n|xi^4|n+2> = (4n+6) sqrt((n+1)(n+2))
    <n|xi^4|n+4> = sqrt((n+1)(n+2)(n+3)(n+4))
    <n|p^2|n>    = Omega (n + 1/2) <n|p^2|n+2>  = -(Omega/2) sqrt((n+1)(n+2))

Note this module's Hamiltonian normalization carries the 1/2 in front of
the kinetic term, unlike the box-basis convention -d^2 + x^k; use
box_convention_energy to compare spectra across the two.
"""

from __future__ import annotations

from dataclasses import dataclass

import gmpy2

from .eigen import SymMatrix
from .mp import GUARD_BITS, BigReal, to_big, workprec


@dataclass(frozen=True)
class HOBasisSpec:
    """N even plus N odd basis functions of the Omega-oscillator."""

    Omega: BigReal
    N: int
    omega2: BigReal
    lam: BigReal

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("need at least one basis function per parity")


def _cubic_root(omega2, rhs, precision: int) -> BigReal:
    """Unique positive root of Omega^3 - omega^2 Omega = rhs, rhs > 0.

    Newton from a seed at or above the root (the cubic is convex and
    increasing there), with a bisection fallback if the iteration ever
    leaves its bracket.
    """
    with workprec(precision + GUARD_BITS):
        w2 = to_big(omega2)
        r = to_big(rhs)
        if r <= 0:
            raise ValueError("cubic right-hand side must be positive")
        w = gmpy2.sqrt(w2) if w2 > 0 else gmpy2.mpfr(0)
        hi = w + gmpy2.root(r, 3) + 1
        x = max(w, gmpy2.root(r, 3))
        if x * x * x - w2 * x - r < 0:
            x = hi
        tol = gmpy2.exp2(-(precision + GUARD_BITS // 2))
        for _ in range(precision + 64):
            f = x * x * x - w2 * x - r
            fp = 3 * x * x - w2
            if fp <= 0:
                break
            step = f / fp
            nx = x - step
            if nx <= 0 or nx > hi:
                break
            x = nx
            if abs(step) <= tol * x:
                f = x * x * x - w2 * x - r
                if abs(f) <= tol * r * 8:
                    with workprec(precision):
                        return +x
        # bisection fallback on [0, hi]; f(0) = -r < 0 < f(hi)
        lo = gmpy2.mpfr(0)
        for _ in range(precision + GUARD_BITS + 8):
            mid = (lo + hi) / 2
            if mid * mid * mid - w2 * mid - r < 0:
                lo = mid
            else:
                hi = mid
        with workprec(precision):
            return +((lo + hi) / 2)


def pms_frequency(omega2, lam, N: int, precision: int) -> BigReal:
    """Minimal-sensitivity frequency: Omega^3 - omega^2 Omega = 8 lambda (N + 1/(8N))."""
    if N < 1:
        raise ValueError("N must be >= 1")
    with workprec(precision + GUARD_BITS):
        rhs = 8 * to_big(lam) * (N + gmpy2.mpq(1, 8 * N))
    return _cubic_root(omega2, rhs, precision)


def op_frequency(omega2, lam, N: int, precision: int) -> BigReal:
    """Intersection-point frequency: Omega^3 - omega^2 Omega = 8 lambda (N - 1/4).

    Derived by equating the physical potential at the point where it
    crosses the auxiliary oscillator potential with the top basis energy
    Omega (2N - 1/2).
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    with workprec(precision + GUARD_BITS):
        rhs = 8 * to_big(lam) * (N - gmpy2.mpq(1, 4))
    return _cubic_root(omega2, rhs, precision)


def assemble_ho(spec: HOBasisSpec, precision: int) -> tuple[SymMatrix, SymMatrix]:
    """Even- and odd-sector matrices of H in the Omega-oscillator basis.

    Each sector is pentadiagonal in its own index (oscillator levels
    n = 2j + parity, j = 0..N-1) since x^4 couples n to n +- 2, 4 only.
    """
    with workprec(precision):
        Om = to_big(spec.Omega)
        if Om <= 0:
            raise ValueError("basis frequency Omega must be positive")
        w2 = to_big(spec.omega2)
        lam = to_big(spec.lam)
        inv2 = 1 / (2 * Om)
        inv4 = inv2 * inv2

        def entry(n: int, offset: int):
            # <n|H|n+offset> for offset in {0, 2, 4}
            if offset == 0:
                kin = Om * (n + gmpy2.mpq(1, 2)) / 2
                x2 = gmpy2.mpfr(2 * n + 1) * inv2
                x4 = gmpy2.mpfr(6 * n * n + 6 * n + 3) * inv4
                return kin + w2 * x2 / 2 + lam * x4
            if offset == 2:
                root = gmpy2.sqrt(gmpy2.mpfr((n + 1) * (n + 2)))
                kin = -Om * root / 4
                x2 = root * inv2
                x4 = gmpy2.mpfr(4 * n + 6) * root * inv4
                return kin + w2 * x2 / 2 + lam * x4
            root = gmpy2.sqrt(gmpy2.mpfr((n + 1) * (n + 2) * (n + 3) * (n + 4)))
            return lam * root * inv4

        out = []
        for parity_start in (0, 1):
            meta = {
                "basis": "ho",
                "parity": "even" if parity_start == 0 else "odd",
                "N": spec.N,
                "Omega": Om,
                "omega2": w2,
                "lambda": lam,
            }
            mat = SymMatrix(spec.N, precision, meta=meta)
            for j in range(spec.N):
                n = 2 * j + parity_start
                mat.set(j, j, entry(n, 0))
                if j + 1 < spec.N:
                    mat.set(j, j + 1, entry(n, 2))
                if j + 2 < spec.N:
                    mat.set(j, j + 2, entry(n, 4))
            out.append(mat)
    return out[0], out[1]


def box_convention_energy(E, lam, precision: int, k: int = 4) -> BigReal:
    """Map an eigenvalue of (1/2)(-d^2) + lam x^k to the -d^2 + x^k convention.

    Doubling gives -d^2 + 2 lam x^k, and rescaling x absorbs the
    coefficient: E_box = 2 E * (2 lam)^(-2/(k+2)).  Only meaningful for
    omega = 0.
    """
    with workprec(precision + GUARD_BITS):
        val = 2 * to_big(E) * _neg_rational_pow(2 * to_big(lam), 2, k + 2)
    with workprec(precision):
        return +val


def _neg_rational_pow(base, num: int, den: int):
    return 1 / gmpy2.root(base**num, den)
