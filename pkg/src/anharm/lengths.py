"""Optimal box half-width rules for the trigonometric basis.

Every rule here realizes the same structural form

    L = (pi^2 alpha(k))^(1/(k+2)) * N^(2/(k+2)),

differing only in the proportionality coefficient alpha(k), which ties
the potential value at the box edge to the top basis energy via
V(L) = alpha N^2 pi^2 / L^2.  The exact trace rule fixes L instead by
making the pre-diagonalization trace stationary in L; its alpha is
back-computed so the structural identity still holds.

Polynomial potentials delegate to their leading exponent k; a non-unit
leading coefficient beta rescales L by beta^(-1/(k+2)) (scaling x maps
beta x^k onto the unit-coefficient problem).
"""

from __future__ import annotations

from dataclasses import dataclass

import gmpy2

from . import trigbasis
from ._kernels import eigvalsh_f64
from .eigen import jacobi_eigen
from .mp import GUARD_BITS, BigReal, to_big, workprec
from .potentials import Potential

RULES = ("schwartz", "op", "op1", "op2", "trace", "trace-asym", "scan")


class ScanBracketError(RuntimeError):
    """Raised when the scan objective is not unimodal over the bracket."""


@dataclass(frozen=True)
class LengthResult:
    L: BigReal
    alpha: BigReal
    rule: str
    N: int
    k: int


def _leading(pot_or_k) -> tuple[Potential, int]:
    pot = Potential.coerce(pot_or_k)
    return pot, pot.leading_exponent


def _check_nk(k: int, N: int):
    if k < 2 or k % 2 != 0:
        raise ValueError(f"exponent must be even and >= 2, got {k}")
    if N < 1:
        raise ValueError(f"basis count must be >= 1, got {N}")


def _structural_length(alpha, k: int, N: int):
    """L from the shared identity, at the ambient precision."""
    pi = gmpy2.const_pi()
    return gmpy2.root(pi * pi * alpha * (N * N), k + 2)


def _beta_rescale(L, pot: Potential, k: int):
    beta = pot.leading_coefficient
    if beta == 1:
        return L
    b = gmpy2.mpfr(gmpy2.mpq(beta.numerator, beta.denominator))
    return L / gmpy2.root(b, k + 2)


def _finish(pot: Potential, k: int, N: int, alpha, rule: str, precision: int) -> LengthResult:
    """Apply the structural identity and the leading-coefficient rescale."""
    L = _structural_length(alpha, k, N)
    L = _beta_rescale(L, pot, k)
    # alpha consistent with the rescaled L, so L = (pi^2 alpha)^(1/(k+2)) N^(2/(k+2)) always holds
    beta = pot.leading_coefficient
    if beta != 1:
        alpha = alpha / gmpy2.mpfr(gmpy2.mpq(beta.numerator, beta.denominator))
    with workprec(precision):
        return LengthResult(L=+L, alpha=+alpha, rule=rule, N=N, k=k)


def alpha_schwartz(k: int, precision: int) -> BigReal:
    """alpha_S = [(k/2) sin(pi/k)]^(2k/(k+2))."""
    with workprec(precision + GUARD_BITS):
        pi = gmpy2.const_pi()
        base = gmpy2.mpfr(k) / 2 * gmpy2.sin(pi / k)
        val = _rational_pow(base, 2 * k, k + 2)
    with workprec(precision):
        return +val


def alpha_op(k: int, precision: int) -> BigReal:
    """alpha_op = (pi/2)^((k-2)/2)."""
    with workprec(precision + GUARD_BITS):
        val = _rational_pow(gmpy2.const_pi() / 2, k - 2, 2)
    with workprec(precision):
        return +val


def alpha_op1(k: int, precision: int) -> BigReal:
    """alpha_op^(1) = (pi/2)^(2(k-2)/k)."""
    with workprec(precision + GUARD_BITS):
        val = _rational_pow(gmpy2.const_pi() / 2, 2 * (k - 2), k)
    with workprec(precision):
        return +val


def alpha_op2(k: int, precision: int) -> BigReal:
    """alpha_op^(2) = (pi/2 + pi^3/(12 k^2))^(2(k-2)/k)."""
    with workprec(precision + GUARD_BITS):
        pi = gmpy2.const_pi()
        base = pi / 2 + pi**3 / (12 * k * k)
        val = _rational_pow(base, 2 * (k - 2), k)
    with workprec(precision):
        return +val


def alpha_trace_asym(k: int, precision: int) -> BigReal:
    """alpha_T = 2(k+1)/(3k), the large-N limit of the exact trace rule."""
    with workprec(precision + GUARD_BITS):
        val = gmpy2.mpfr(2 * (k + 1)) / (3 * k)
    with workprec(precision):
        return +val


def _rational_pow(base, num: int, den: int):
    """base^(num/den) for positive base, exact rational exponent."""
    if num == 0:
        return gmpy2.mpfr(1)
    return gmpy2.root(base**num, den)


def schwartz_b(k: int, precision: int) -> BigReal:
    """Decay coefficient b = pi^((k+2)/k) * (k/(k+2)) * sin(pi/k) of the mesh error."""
    _check_nk(k, 1)
    with workprec(precision + GUARD_BITS):
        pi = gmpy2.const_pi()
        val = _rational_pow(pi, k + 2, k) * (gmpy2.mpfr(k) / (k + 2)) * gmpy2.sin(pi / k)
    with workprec(precision):
        return +val


def schwartz_spacing(k: int, N: int, precision: int) -> BigReal:
    """Optimal mesh spacing h_S = [k/2 pi^((k+2)/k) sin(pi/k)]^(2k/(k+2)^2) N^(-k/(k+2))."""
    _check_nk(k, N)
    with workprec(precision + GUARD_BITS):
        pi = gmpy2.const_pi()
        core = gmpy2.mpfr(k) / 2 * _rational_pow(pi, k + 2, k) * gmpy2.sin(pi / k)
        val = _rational_pow(core, 2 * k, (k + 2) * (k + 2)) * _rational_pow(gmpy2.mpfr(N), -k, k + 2)
    with workprec(precision):
        return +val


def length_schwartz(pot_or_k, N: int, precision: int) -> LengthResult:
    """Schwartz length L_S = N h_S, equivalently alpha_S under the structural identity."""
    pot, k = _leading(pot_or_k)
    _check_nk(k, N)
    with workprec(precision + GUARD_BITS):
        return _finish(pot, k, N, alpha_schwartz(k, precision + GUARD_BITS), "schwartz", precision)


def length_op(pot_or_k, N: int, precision: int) -> LengthResult:
    """Potential-matching length with edge factor eta = pi/2."""
    pot, k = _leading(pot_or_k)
    _check_nk(k, N)
    with workprec(precision + GUARD_BITS):
        return _finish(pot, k, N, alpha_op(k, precision + GUARD_BITS), "op", precision)


def length_op1(pot_or_k, N: int, precision: int) -> LengthResult:
    """First refined proposal; coincides with the op rule at k = 2 and k = 4."""
    pot, k = _leading(pot_or_k)
    _check_nk(k, N)
    with workprec(precision + GUARD_BITS):
        return _finish(pot, k, N, alpha_op1(k, precision + GUARD_BITS), "op1", precision)


def length_op2(pot_or_k, N: int, precision: int) -> LengthResult:
    """Second refined proposal, slightly above the Schwartz length for k > 2."""
    pot, k = _leading(pot_or_k)
    _check_nk(k, N)
    with workprec(precision + GUARD_BITS):
        return _finish(pot, k, N, alpha_op2(k, precision + GUARD_BITS), "op2", precision)


def length_trace(pot_or_k, N: int, precision: int, mode: str = "exact") -> LengthResult:
    """Trace-stationarity length: d(Tr_N H)/dL = 0 solved in closed form.

    The even-sector trace is A/L^2 + B L^k, so L_T = (2A/(kB))^(1/(k+2)).
    The asymptotic mode replaces the zeta sums by alpha_T = 2(k+1)/(3k).
    """
    pot, k = _leading(pot_or_k)
    _check_nk(k, N)
    if mode == "asymptotic":
        with workprec(precision + GUARD_BITS):
            return _finish(pot, k, N, alpha_trace_asym(k, precision + GUARD_BITS), "trace-asym", precision)
    if mode != "exact":
        raise ValueError(f"mode must be 'exact' or 'asymptotic', got {mode!r}")
    wp = precision + GUARD_BITS
    with workprec(wp):
        pi = gmpy2.const_pi()
        denom = N * pi**k / (k + 1) + gmpy2.mpfr(trigbasis._odd_moment_sum(k, N, wp))
        if denom <= 0:
            raise ArithmeticError(
                "trace potential term must be positive; zeta evaluation is inconsistent"
            )
        ratio = gmpy2.mpfr((4 * N * N - 1) * N) / (6 * k) / denom
        L = pi * gmpy2.root(ratio, k + 2)
        # alpha back-computed so the structural identity is exact for this rule too
        alpha = L ** (k + 2) / (pi * pi * N * N)
        L = _beta_rescale(L, pot, k)
        beta = pot.leading_coefficient
        if beta != 1:
            alpha = alpha / gmpy2.mpfr(gmpy2.mpq(beta.numerator, beta.denominator))
    with workprec(precision):
        return LengthResult(L=+L, alpha=+alpha, rule="trace", N=N, k=k)


def length_scan(
    pot_or_k,
    N: int,
    precision: int,
    objective: str = "ground",
    bracket: tuple | None = None,
    tolerance: float = 1e-8,
    parity: str = "even",
) -> LengthResult:
    """Empirical optimal length by golden-section search over the bracket.

    objective 'ground' minimizes the lowest eigenvalue of the requested
    parity sector; 'trace' minimizes the closed-form even-sector trace.
    A 16-point grid pre-scan guards against non-unimodal brackets: the
    grid minimum must be interior and agree with the golden-section
    result to one grid step, otherwise ScanBracketError is raised.
    Precisions up to 53 bits run on the float64 kernel lane.
    """
    pot, k = _leading(pot_or_k)
    _check_nk(k, N)
    if objective in ("ground", "groundEnergy"):
        use_trace = False
    elif objective == "trace":
        use_trace = True
    else:
        raise ValueError(f"objective must be 'ground' or 'trace', got {objective!r}")

    wp = max(precision, 53)
    with workprec(wp):
        if bracket is None:
            ls = length_schwartz(pot, N, wp).L
            lo, hi = ls * gmpy2.mpfr("0.4"), ls * gmpy2.mpfr("2.2")
        else:
            lo, hi = to_big(bracket[0]), to_big(bracket[1])
        if lo <= 0:
            raise ValueError("bracket lower end must be positive")
        if lo > hi:
            raise ValueError("bracket must satisfy L_lo <= L_hi")

        def objective_at(Lval):
            if use_trace:
                return trigbasis.trace_closed_form(pot, N, Lval, precision)
            assemble = trigbasis.assemble_even if parity == "even" else trigbasis.assemble_odd
            ham = assemble(pot, N, Lval, max(precision, 53))
            if precision <= 53:
                return float(eigvalsh_f64(ham.matrix.to_numpy())[0])
            return jacobi_eigen(ham.matrix).eigenvalues[0]

        if lo == hi:
            L_best = lo
        else:
            grid = [lo + (hi - lo) * i / 15 for i in range(16)]
            vals = [objective_at(x) for x in grid]
            idx = min(range(16), key=lambda i: vals[i])
            if idx in (0, 15):
                raise ScanBracketError(
                    "objective minimum sits at a bracket endpoint; bracket does not enclose "
                    "a unimodal minimum"
                )
            a, b = grid[idx - 1], grid[idx + 1]
            invphi = (gmpy2.sqrt(gmpy2.mpfr(5)) - 1) / 2
            x1 = b - invphi * (b - a)
            x2 = a + invphi * (b - a)
            f1, f2 = objective_at(x1), objective_at(x2)
            while (b - a) > tolerance * b:
                if f1 < f2:
                    b, x2, f2 = x2, x1, f1
                    x1 = b - invphi * (b - a)
                    f1 = objective_at(x1)
                else:
                    a, x1, f1 = x1, x2, f2
                    x2 = a + invphi * (b - a)
                    f2 = objective_at(x2)
            L_best = (a + b) / 2
            step = grid[1] - grid[0]
            if abs(L_best - grid[idx]) > step:
                raise ScanBracketError(
                    "golden-section result disagrees with the grid pre-scan; objective is "
                    "not unimodal over the bracket"
                )
        pi = gmpy2.const_pi()
        alpha = L_best ** (k + 2) / (pi * pi * N * N)
    with workprec(precision):
        return LengthResult(L=+L_best, alpha=+alpha, rule="scan", N=N, k=k)


def length_for_rule(rule: str, pot_or_k, N: int, precision: int, **scan_kwargs) -> LengthResult:
    """Dispatch a CLI rule tag to its implementation."""
    if rule == "schwartz":
        return length_schwartz(pot_or_k, N, precision)
    if rule == "op":
        return length_op(pot_or_k, N, precision)
    if rule == "op1":
        return length_op1(pot_or_k, N, precision)
    if rule == "op2":
        return length_op2(pot_or_k, N, precision)
    if rule == "trace":
        return length_trace(pot_or_k, N, precision, mode="exact")
    if rule == "trace-asym":
        return length_trace(pot_or_k, N, precision, mode="asymptotic")
    if rule == "scan":
        return length_scan(pot_or_k, N, precision, **scan_kwargs)
    raise ValueError(f"unknown length rule {rule!r}; expected one of {RULES}")
