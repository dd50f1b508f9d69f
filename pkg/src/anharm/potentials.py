"""Symmetric polynomial potentials and their large-x asymptotics.

A potential is a sum of even monomials a_i x^i with positive leading
coefficient, so every problem treated here is confining.  Coefficients
are held as exact rationals and converted to the working precision once,
at evaluation or assembly time.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import gmpy2

from .mp import BigReal


def _as_fraction(value) -> Fraction:
    """Coerce a coefficient to an exact rational.

    Accepts int, Fraction, decimal or rational strings, and float
    (floats are read through their decimal repr so "0.1" means 1/10).
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(str(value))
    raise TypeError(f"cannot interpret coefficient {value!r} as a rational")


@dataclass(frozen=True)
class Potential:
    """V(x) = sum of coeff * x^exponent over terms, exponents even and >= 2."""

    terms: tuple[tuple[int, Fraction], ...]

    def __post_init__(self):
        if not self.terms:
            raise ValueError("potential needs at least one term")
        last = 0
        for exp, coeff in self.terms:
            if not isinstance(exp, int) or exp < 2 or exp % 2 != 0:
                raise ValueError(f"exponent {exp} must be an even integer >= 2")
            if exp <= last:
                raise ValueError("exponents must be strictly increasing")
            if not isinstance(coeff, Fraction):
                raise TypeError("coefficients must be normalized to Fraction")
            last = exp
        if self.terms[-1][1] <= 0:
            raise ValueError("leading coefficient must be positive (confinement)")

    @classmethod
    def make(cls, terms) -> "Potential":
        """Build from an iterable of (exponent, coefficient) pairs."""
        norm = tuple(sorted(((int(e), _as_fraction(c)) for e, c in terms)))
        return cls(norm)

    @classmethod
    def monomial(cls, k: int) -> "Potential":
        return cls.make([(k, 1)])

    @classmethod
    def coerce(cls, spec) -> "Potential":
        """Accept a Potential, an even integer k, or a term list."""
        if isinstance(spec, Potential):
            return spec
        if isinstance(spec, int):
            return cls.monomial(spec)
        return cls.make(spec)

    @classmethod
    def parse(cls, text: str) -> "Potential":
        """Parse the CLI forms: "x^4" shorthand or a JSON term list."""
        text = text.strip()
        if text.startswith("x^"):
            return cls.monomial(int(text[2:]))
        import json

        pairs = json.loads(text)
        return cls.make(pairs)

    @property
    def is_monomial(self) -> bool:
        return len(self.terms) == 1 and self.terms[0][1] == 1

    @property
    def leading_exponent(self) -> int:
        return self.terms[-1][0]

    @property
    def leading_coefficient(self) -> Fraction:
        return self.terms[-1][1]

    def key(self) -> str:
        """Canonical id used for reference-spectrum lookup."""
        if self.is_monomial:
            return f"x^{self.leading_exponent}"
        return "+".join(f"{c}x^{e}" for e, c in self.terms)

    def __str__(self) -> str:
        return self.key()


@dataclass(frozen=True)
class Asymptotics:
    """Bound states decay like exp(-a x^p) for large x."""

    p: Fraction
    a: Fraction

    def __post_init__(self):
        if self.p <= 1 or self.a <= 0:
            raise ValueError("asymptotics require p > 1 and a > 0")


def evaluate(pot: Potential, x: BigReal) -> BigReal:
    """Evaluate V(x) in the ambient working precision.

    Uses Horner's scheme in y = x^2, so the result is exactly even in x.
    """
    y = gmpy2.mpfr(x) * gmpy2.mpfr(x)
    by_half_exp = {e // 2: c for e, c in pot.terms}
    top = pot.leading_exponent // 2
    acc = gmpy2.mpfr(0)
    for j in range(top, 0, -1):
        c = by_half_exp.get(j)
        if c is not None:
            acc += gmpy2.mpfr(gmpy2.mpq(c.numerator, c.denominator))
        acc *= y
    return acc


def asymptotics(pot: Potential) -> Asymptotics:
    """Decay parameters from the leading term x^k: p=(k+2)/2, a=2/(k+2).

    Polynomials delegate to their leading exponent; the Potential
    invariants already reject non-confining inputs.
    """
    k = pot.leading_exponent
    return Asymptotics(p=Fraction(k + 2, 2), a=Fraction(2, k + 2))


@dataclass(frozen=True)
class QESGroundState:
    """Closed-form ground state of a sextic well, psi = exp(-b4 x^4/4 + b2 x^2/2).

    e0_nonpositive flags the algebraic result E0 <= 0, which cannot be a
    node-free ground-state energy of these wells; the caller decides what
    to do with it.
    """

    E0: Fraction
    b2: Fraction
    b4: Fraction
    e0_nonpositive: bool


def sextic_qes_ground(a2, a4, a6) -> QESGroundState | None:
    """Exact ground state of V = a2 x^2 + a4 x^4 + a6 x^6 when one exists.

    Requires a6 to be the square of a rational so the construction stays
    exact: b4 = sqrt(a6), b2 = -a4/(2 b4), and the well admits the
    closed-form state iff a2 = b2^2 - 3 b4, with E0 = -b2.
    Returns None when the constraint fails.
    """
    a2, a4, a6 = _as_fraction(a2), _as_fraction(a4), _as_fraction(a6)
    if a6 <= 0:
        raise ValueError("sextic coefficient a6 must be positive")
    b4 = _rational_sqrt(a6)
    if b4 is None:
        raise ValueError("a6 must be a perfect rational square for the exact construction")
    b2 = -a4 / (2 * b4)
    if a2 != b2 * b2 - 3 * b4:
        return None
    E0 = -b2
    return QESGroundState(E0=E0, b2=b2, b4=b4, e0_nonpositive=E0 <= 0)


def _rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a positive rational, or None if irrational."""
    n, d = q.numerator, q.denominator
    rn, rd = gmpy2.isqrt(n), gmpy2.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(int(rn), int(rd))
    return None


def qes_residual_coefficients(state: QESGroundState, a2, a4, a6) -> list[Fraction]:
    """Coefficients of (-psi'' + V psi - E0 psi)/psi as a polynomial in x.

    With psi = exp(-b4 x^4/4 + b2 x^2/2) this expands exactly; the list
    is [x^0, x^2, x^4, x^6] coefficients and must be all zero for a
    genuine closed-form eigenstate.  Kept rational so tests can assert
    symbolic vanishing rather than numerical smallness.
    """
    a2, a4, a6 = _as_fraction(a2), _as_fraction(a4), _as_fraction(a6)
    b2, b4, E0 = state.b2, state.b4, state.E0
    # psi'/psi = -b4 x^3 + b2 x; psi''/psi = (psi'/psi)' + (psi'/psi)^2
    return [
        -b2 - E0,
        a2 + 3 * b4 - b2 * b2,
        a4 + 2 * b2 * b4,
        a6 - b4 * b4,
    ]
