"""Uniform-mesh collocation solver built on sinc interpolation.

Acts as an oracle independent of the basis-expansion modules: the only
shared ingredient is the optimal spacing h_S.  The wave function is
interpolated through its values on the symmetric mesh x_n = n h,
n = -N..N, and the second derivative is applied exactly to the sinc
interpolant, giving the standard collocation matrix

    H_nm = -D2_nm + V(x_n) delta_nm,
    D2_nn = -pi^2/(3 h^2),   D2_nm = -2 (-1)^(n-m) / (h^2 (n-m)^2).

Little sinc functions (the finite-box analogue, h = 2L/N with N even)
are provided for evaluation and interpolation work only; the finite-box
solver is the trigonometric module.
"""

from __future__ import annotations

from dataclasses import dataclass

import gmpy2

from .eigen import SpectrumReport, SymMatrix, jacobi_eigen
from .lengths import schwartz_b, schwartz_spacing
from .mp import GUARD_BITS, BigReal, to_big, workprec
from .potentials import Potential, asymptotics, evaluate


@dataclass(frozen=True)
class MeshSpec:
    """Uniform mesh of spacing h; N counts points per half-axis.

    The collocation solver uses the 2N+1 symmetric points n h, |n| <= N.
    For little sinc functions N is even and the box half-width is
    L = N h / 2 (equivalently h = 2L/N).
    """

    h: BigReal
    N: int

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("mesh needs N >= 1")

    @property
    def half_width(self):
        return self.N * gmpy2.mpfr(self.h)

    @property
    def lsf_box(self):
        return self.N * gmpy2.mpfr(self.h) / 2


def sinc_eval(m: int, h, x) -> BigReal:
    """Generalized sinc S_m(h, x) = sin(pi (x - m h)/h) / (pi (x - m h)/h).

    The removable singularity at x = m h evaluates to 1.
    """
    hb = gmpy2.mpfr(h)
    if hb <= 0:
        raise ValueError("spacing h must be positive")
    t = (gmpy2.mpfr(x) - m * hb) / hb
    if gmpy2.is_zero(t):
        return gmpy2.mpfr(1)
    arg = gmpy2.const_pi() * t
    return gmpy2.sin(arg) / arg


def lsf_eval(k: int, h, N: int, x) -> BigReal:
    """Little sinc function s_k(h, N, x) on the box (-L, L), L = N h / 2.

    Two-term closed form from the truncated particle-in-a-box
    completeness kernel; N must be even and |k| <= N/2 - 1 so that the
    function vanishes at the box edges and is Kronecker on the interior
    mesh.
    """
    if N % 2 != 0 or N < 2:
        raise ValueError("little sinc functions need even N >= 2")
    if abs(k) > N // 2 - 1:
        raise ValueError(f"mesh index |k| must be <= N/2 - 1, got {k}")
    hb = gmpy2.mpfr(h)
    if hb <= 0:
        raise ValueError("spacing h must be positive")
    xb = gmpy2.mpfr(x)
    pi = gmpy2.const_pi()
    stretch = 1 + gmpy2.mpq(1, 2 * N)

    tm = xb - k * hb
    if gmpy2.is_zero(tm):
        first = gmpy2.mpfr(2 * N + 1)
    else:
        first = gmpy2.sin(stretch * pi / hb * tm) / gmpy2.sin(pi / (2 * N * hb) * tm)
    tp = xb + k * hb
    second = gmpy2.cos(stretch * pi / hb * tp) / gmpy2.cos(pi / (2 * N * hb) * tp)
    return (first - second) / (2 * N)


def build_mesh(pot_or_k, N: int, h=None, precision: int = 128) -> MeshSpec:
    """Mesh for the collocation solver; h defaults to the optimal spacing.

    The Schwartz spacing is defined for the monomial x^k; a leading
    coefficient beta rescales it by beta^(-1/(k+2)), exactly like the
    box length rules.
    """
    pot = Potential.coerce(pot_or_k)
    k = pot.leading_exponent
    with workprec(precision + GUARD_BITS):
        if h is None:
            hb = gmpy2.mpfr(schwartz_spacing(k, N, precision + GUARD_BITS))
            beta = pot.leading_coefficient
            if beta != 1:
                b = gmpy2.mpfr(gmpy2.mpq(beta.numerator, beta.denominator))
                hb = hb / gmpy2.root(b, k + 2)
        else:
            hb = to_big(h)
        if hb <= 0:
            raise ValueError("spacing h must be positive")
    with workprec(precision):
        return MeshSpec(h=+hb, N=N)


def collocation_matrix(pot_or_k, mesh: MeshSpec, precision: int) -> SymMatrix:
    """Assemble -D2 + diag(V) on the symmetric 2N+1 point mesh."""
    pot = Potential.coerce(pot_or_k)
    N = mesh.N
    dim = 2 * N + 1
    with workprec(precision):
        hb = to_big(mesh.h)
        pi = gmpy2.const_pi()
        inv_h2 = 1 / (hb * hb)
        diag_kin = pi * pi / 3 * inv_h2
        meta = {
            "basis": "sinc",
            "potential": pot.key(),
            "N": N,
            "h": hb,
            "k": pot.leading_exponent,
        }
        mat = SymMatrix(dim, precision, meta=meta)
        # row index i maps to mesh point n = i - N
        for i in range(dim):
            x = (i - N) * hb
            mat.set(i, i, diag_kin + evaluate(pot, x))
            for j in range(i + 1, dim):
                d = j - i
                v = 2 * inv_h2 / (d * d)
                if d % 2 != 0:
                    v = -v
                mat.set(i, j, v)
    return mat


def collocation_solve(pot_or_k, N: int, h=None, precision: int = 128, max_sweeps: int = 100) -> SpectrumReport:
    """Sorted spectrum of the collocation Hamiltonian; h=None takes the optimal spacing."""
    if N < 2:
        raise ValueError("collocation needs N >= 2")
    mesh = build_mesh(pot_or_k, N, h=h, precision=precision)
    mat = collocation_matrix(pot_or_k, mesh, precision)
    res = jacobi_eigen(mat, max_sweeps=max_sweeps)
    meta = dict(mat.meta)
    meta.update({"precision": precision, "sweeps": res.sweeps, "method": "sinc"})
    return SpectrumReport(eigenvalues=res.eigenvalues, meta=meta)


def error_model(pot_or_k, N: int, h, precision: int = 53) -> tuple[BigReal, BigReal]:
    """Diagnostic pair (eps_T, eps_A): truncation and mesh error estimates.

    eps_T ~ exp(-a (N h)^p) and eps_A ~ exp(-b h^(-q)), q = p/(p-1), for
    a bound state decaying like exp(-a x^p).  These are balance
    heuristics, not rigorous bounds.
    """
    pot = Potential.coerce(pot_or_k)
    asym = asymptotics(pot)
    k = pot.leading_exponent
    with workprec(precision + GUARD_BITS):
        hb = to_big(h)
        a = gmpy2.mpfr(gmpy2.mpq(asym.a.numerator, asym.a.denominator))
        p = gmpy2.mpfr(gmpy2.mpq(asym.p.numerator, asym.p.denominator))
        q = p / (p - 1)
        b = gmpy2.mpfr(schwartz_b(k, precision + GUARD_BITS))
        eps_t = gmpy2.exp(-a * (N * hb) ** p)
        eps_a = gmpy2.exp(-b * hb ** (-q))
    with workprec(precision):
        return +eps_t, +eps_a
