"""Particle-in-a-box basis on (-L, L): Hamiltonian assembly and closed-form trace.

Even sector uses phi_m = cos((m - 1/2) pi x / L)/sqrt(L), odd sector
phi_m = sin(m pi x / L)/sqrt(L), m = 1..N.  For V = x^k all potential
matrix elements reduce to the cosine moments

    D_s = (1/pi) * integral_0^pi x^k cos(s x) dx,

which have an exact alternating closed form; polynomial potentials sum
the same structure per monomial.  Cosine evenness forces D_{-s} = D_s,
so off-diagonal indices enter through |m - n|.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import gmpy2

from .eigen import SymMatrix
from .mp import GUARD_BITS, BigReal, to_big, workprec
from .potentials import Potential
from .specialfns import descending_factorial, hurwitz_zeta, zeta_even


@lru_cache(maxsize=None)
def d_coefficient(k: int, s: int, precision: int) -> BigReal:
    """Cosine moment D_s of x^k over (0, pi), at the given precision.

    D_0 = pi^k/(k+1);  for s > 0,
    D_s = sum_{i=0}^{k/2-1} (-1)^(i+s) / s^(2(i+1)) * k!/(k-2i-1)! * pi^(k-2i-2).
    """
    if k < 2 or k % 2 != 0:
        raise ValueError(f"potential exponent must be even and >= 2, got {k}")
    if s < 0:
        raise ValueError("moment index must be nonnegative")
    with workprec(precision + GUARD_BITS):
        pi = gmpy2.const_pi()
        if s == 0:
            val = pi**k / (k + 1)
        else:
            val = gmpy2.mpfr(0)
            for i in range(k // 2):
                term = gmpy2.mpfr(descending_factorial(k, 2 * i + 1))
                term *= pi ** (k - 2 * i - 2)
                term /= gmpy2.mpfr(s) ** (2 * (i + 1))
                if (i + s) % 2 != 0:
                    term = -term
                val += term
    with workprec(precision):
        return +val


@dataclass
class TrigHamiltonian:
    parity: str
    N: int
    L: BigReal
    potential: Potential
    matrix: SymMatrix


def _potential_weights(pot: Potential, L: BigReal):
    """Per-monomial prefactors a_i (L/pi)^i at the ambient precision."""
    pi = gmpy2.const_pi()
    out = []
    for exp, coeff in pot.terms:
        c = gmpy2.mpfr(gmpy2.mpq(coeff.numerator, coeff.denominator))
        out.append((exp, c * (L / pi) ** exp))
    return out


def _assemble(pot_or_k, N: int, L, precision: int, parity: str) -> TrigHamiltonian:
    pot = Potential.coerce(pot_or_k)
    if N < 1:
        raise ValueError("basis count N must be >= 1")
    with workprec(precision):
        Lb = to_big(L)
        if Lb <= 0:
            raise ValueError("box half-width L must be positive")
        pi = gmpy2.const_pi()
        kin_scale = pi * pi / (Lb * Lb)
        weights = _potential_weights(pot, Lb)
        meta = {
            "basis": "trig",
            "parity": parity,
            "potential": pot.key(),
            "N": N,
            "L": Lb,
            "k": pot.leading_exponent,
        }
        mat = SymMatrix(N, precision, meta=meta)
        for m in range(1, N + 1):
            for n in range(m, N + 1):
                if parity == "even":
                    v = gmpy2.mpfr(0)
                    for exp, w in weights:
                        v += w * (d_coefficient(exp, m + n - 1, precision)
                                  + d_coefficient(exp, n - m, precision))
                    if m == n:
                        half = gmpy2.mpfr(2 * m - 1) / 2
                        v += half * half * kin_scale
                else:
                    v = gmpy2.mpfr(0)
                    for exp, w in weights:
                        v += w * (d_coefficient(exp, n - m, precision)
                                  - d_coefficient(exp, m + n, precision))
                    if m == n:
                        v += gmpy2.mpfr(m * m) * kin_scale
                mat.set(m - 1, n - 1, v)
    return TrigHamiltonian(parity=parity, N=N, L=Lb, potential=pot, matrix=mat)


def assemble_even(pot_or_k, N: int, L, precision: int) -> TrigHamiltonian:
    """Even-sector Hamiltonian: H_mn = (m-1/2)^2 pi^2/L^2 delta_mn + sum_i a_i (L/pi)^i (D_{m+n-1} + D_{|m-n|})."""
    return _assemble(pot_or_k, N, L, precision, "even")


def assemble_odd(pot_or_k, N: int, L, precision: int) -> TrigHamiltonian:
    """Odd-sector Hamiltonian: H_mn = m^2 pi^2/L^2 delta_mn + sum_i a_i (L/pi)^i (D_{|m-n|} - D_{m+n})."""
    return _assemble(pot_or_k, N, L, precision, "odd")


def _odd_moment_sum(k: int, N: int, precision: int) -> BigReal:
    """sum_{n=1}^{N} D_{2n-1} for exponent k, via the zeta closed form.

    Uses sum over odd s of s^(-2(i+1)) = (1 - 4^-(i+1)) zeta(2i+2)
    - 4^-(i+1) zeta(2i+2, N + 1/2), folded into the D_s structure.
    """
    with workprec(precision + GUARD_BITS):
        pi = gmpy2.const_pi()
        total = gmpy2.mpfr(0)
        for i in range(k // 2):
            s = 2 * i + 2
            zr = gmpy2.mpfr(zeta_even(s, precision + GUARD_BITS))
            zh = gmpy2.mpfr(hurwitz_zeta(s, gmpy2.mpq(2 * N + 1, 2), precision + GUARD_BITS))
            coeff = gmpy2.mpfr(descending_factorial(k, 2 * i + 1)) / gmpy2.mpfr((-4) ** (i + 1))
            total += pi ** (k - 2 * i - 2) * coeff * ((4 ** (i + 1) - 1) * zr - zh)
    with workprec(precision):
        return +total


def trace_closed_form(pot_or_k, N: int, L, precision: int) -> BigReal:
    """Closed-form trace of the even-sector Hamiltonian.

    Tr_N H = pi^2 (4N^2-1) N / (12 L^2)
           + sum_i a_i (L/pi)^i [ sum_{n=1}^N D_{2n-1}(i) + N D_0(i) ],
    with the odd-moment sum expressed through Riemann and Hurwitz zeta
    values so no individual D_s is needed.
    """
    pot = Potential.coerce(pot_or_k)
    if N < 1:
        raise ValueError("basis count N must be >= 1")
    with workprec(precision):
        Lb = to_big(L)
        if Lb <= 0:
            raise ValueError("box half-width L must be positive")
        pi = gmpy2.const_pi()
        total = pi * pi * (4 * N * N - 1) * N / (12 * Lb * Lb)
        for exp, w in _potential_weights(pot, Lb):
            moment = _odd_moment_sum(exp, N, precision)
            total += w * (moment + N * d_coefficient(exp, 0, precision))
        return +total
