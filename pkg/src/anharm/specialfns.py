"""Special functions needed by the trace-stationarity length rule.

Only a narrow slice is required: Riemann zeta at even integers s >= 2,
Hurwitz zeta zeta(s, shift) for the same s and positive shifts (in
practice shift = N + 1/2), and exact factorial ratios.  Everything is
computed from scratch at the requested bit precision; no floating-point
library constants enter the results.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction

import gmpy2

from .mp import GUARD_BITS, BigReal, to_big, workprec

_bernoulli_cache: list[Fraction] = [Fraction(1), Fraction(-1, 2)]
_bernoulli_lock = threading.Lock()


def bernoulli(m: int) -> Fraction:
    """Exact Bernoulli number B_m (B_1 = -1/2 convention).

    Computed by the defining recurrence sum_{j<=m} C(m+1,j) B_j = 0 and
    cached; the cache only grows, so concurrent readers are safe.
    """
    if m < 0:
        raise ValueError("Bernoulli index must be nonnegative")
    if m < len(_bernoulli_cache):
        return _bernoulli_cache[m]
    with _bernoulli_lock:
        while len(_bernoulli_cache) <= m:
            n = len(_bernoulli_cache)
            acc = Fraction(0)
            for j in range(n):
                acc += math.comb(n + 1, j) * _bernoulli_cache[j]
            _bernoulli_cache.append(-acc / (n + 1))
    return _bernoulli_cache[m]


def descending_factorial(k: int, m: int) -> int:
    """Exact k!/(k-m)! = k (k-1) ... (k-m+1)."""
    if not (isinstance(k, int) and isinstance(m, int)):
        raise TypeError("descending_factorial takes integers")
    if m < 0 or m > k:
        raise ValueError(f"need 0 <= m <= k, got k={k}, m={m}")
    return math.prod(range(k - m + 1, k + 1))


def _check_even_s(s: int):
    if not isinstance(s, int) or s < 2 or s % 2 != 0:
        raise ValueError(f"zeta order must be an even integer >= 2, got {s}")


def zeta_even(s: int, precision: int) -> BigReal:
    """zeta(s) for even s >= 2 via the Bernoulli closed form.

    zeta(2n) = (-1)^(n+1) B_{2n} (2 pi)^(2n) / (2 (2n)!), evaluated with
    guard bits and rounded once to the requested precision.
    """
    _check_even_s(s)
    n = s // 2
    b = bernoulli(s)
    with workprec(precision + GUARD_BITS):
        two_pi = 2 * gmpy2.const_pi()
        val = two_pi**s * gmpy2.mpq(b.numerator, b.denominator) / (2 * gmpy2.factorial(s))
        if n % 2 == 0:
            val = -val
    with workprec(precision):
        return +val


def _ascending_factorial(s: int, m: int) -> int:
    """s (s+1) ... (s+m-1), exact."""
    return math.prod(range(s, s + m))


def hurwitz_zeta(s: int, shift, precision: int) -> BigReal:
    """zeta(s, shift) = sum_{n>=0} (n+shift)^(-s) for even s >= 2, shift > 0.

    Direct summation of M terms plus an Euler-Maclaurin tail with as many
    Bernoulli corrections as the target precision needs.  Because
    f(t) = (t+shift)^(-s) is completely monotone, the remainder after
    truncating the (asymptotic) correction series is bounded in magnitude
    by the first omitted term; M is doubled whenever the corrections
    start growing before that bound reaches the target resolution.
    """
    _check_even_s(s)
    shift_f = float(gmpy2.mpfr(shift)) if isinstance(shift, str) else float(shift)
    if shift_f <= 0:
        raise ValueError(f"shift must be positive, got {shift}")

    # seed keeps tiny precisions cheap; the retry loop below raises M as
    # far as the correction series needs (roughly M ~ precision/8)
    m_terms = max(32, int(precision / (s * math.log2(shift_f + 32))))

    with workprec(precision + GUARD_BITS):
        a = to_big(shift)
        # target absolute resolution, anchored to the leading term a^(-s)
        target = a**(-s) * gmpy2.exp2(-(precision + 16))
        while True:
            x = m_terms + a
            corrections, ok = _euler_maclaurin_tail(s, x, target)
            if ok:
                break
            m_terms *= 2

        total = gmpy2.mpfr(0)
        for n in range(m_terms):
            total += (n + a) ** (-s)
        x = m_terms + a
        total += x ** (1 - s) / (s - 1)
        total += x ** (-s) / 2
        total += corrections
    with workprec(precision):
        return +total


def _euler_maclaurin_tail(s: int, x, target):
    """Bernoulli correction sum for the zeta tail past x, at ambient precision.

    Returns (sum, True) once the next term falls below target, or
    (partial, False) if the series turns divergent first, meaning the
    summation cutoff x must grow.
    """
    total = gmpy2.mpfr(0)
    prev = None
    j = 1
    while True:
        b = bernoulli(2 * j)
        coeff = gmpy2.mpq(b.numerator, b.denominator) / gmpy2.factorial(2 * j)
        term = coeff * _ascending_factorial(s, 2 * j - 1) * x ** (-s - 2 * j + 1)
        mag = abs(term)
        if mag < target:
            return total, True
        if prev is not None and mag >= prev:
            return total, False
        total += term
        prev = mag
        j += 1
