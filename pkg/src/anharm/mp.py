"""Configurable-precision real arithmetic on top of gmpy2/MPFR.

Every public routine in this package that takes a ``precision`` argument
interprets it as the MPFR significand size in bits.  Computations run
inside an explicit gmpy2 context so results never depend on whatever
precision the caller's thread happens to have active.
"""

from __future__ import annotations

from fractions import Fraction

import gmpy2

BigReal = gmpy2.mpfr

# extra bits used internally before rounding a result back to the
# requested precision; absorbs cancellation in short alternating sums
GUARD_BITS = 32


def workprec(bits: int):
    """Context manager activating a gmpy2 context with the given precision."""
    if bits < 2:
        raise ValueError(f"precision must be at least 2 bits, got {bits}")
    return gmpy2.context(precision=bits)


def to_big(value, bits: int | None = None) -> BigReal:
    """Convert int/str/Fraction/float/mpfr to BigReal.

    With ``bits`` given, the conversion rounds once to that precision;
    otherwise the ambient context precision applies.  Fractions convert
    through mpq so the only rounding is the final one.
    """
    def _conv(v):
        if isinstance(v, Fraction):
            return gmpy2.mpfr(gmpy2.mpq(v.numerator, v.denominator))
        if isinstance(v, str):
            return gmpy2.mpfr(v)
        return gmpy2.mpfr(v)

    if bits is None:
        return _conv(value)
    with workprec(bits):
        return _conv(value)


def big_to_str(x: BigReal) -> str:
    """Decimal-string form of x that round-trips exactly at x's precision."""
    return str(x)


def str_to_big(s: str, bits: int) -> BigReal:
    with workprec(bits):
        return gmpy2.mpfr(s)


def const_pi() -> BigReal:
    """Pi at the ambient context precision."""
    return gmpy2.const_pi()


def root(x, n: int) -> BigReal:
    """Correctly rounded n-th root at the ambient context precision."""
    return gmpy2.root(x, n)


def ulp_distance(a: BigReal, b: BigReal) -> float:
    """Distance between a and b measured in ulps of a.

    Returns 0.0 for exact equality and inf when a is zero but b is not.
    Intended for tests and diagnostics, not for arithmetic.
    """
    if gmpy2.cmp(a, b) == 0:
        return 0.0
    prec = a.precision
    if gmpy2.is_zero(a):
        return float("inf")
    with workprec(max(prec, b.precision) + GUARD_BITS):
        diff = abs(gmpy2.mpfr(a) - gmpy2.mpfr(b))
        # ulp(a) = 2^(exp - prec) with |a| in [2^(exp-1), 2^exp)
        exp = gmpy2.get_exp(a)
        ulp = gmpy2.exp2(exp - prec)
        return float(diff / ulp)
