"""High-precision numeric helpers backing the bound computations.

Every "smallest n such that an inequality holds" question in this package
reduces to one of two primitives:

* ``least_power_exponent`` - smallest n with (num/den)**n beyond an integer
  threshold.  Solved with a 50-digit logarithm estimate, then confirmed
  against the exact integer inequality at the candidate and its neighbour.
* ``least_n_for_log_threshold`` - smallest n with n*step past a threshold,
  both already in the log domain as 50-digit Decimals.  Used when the
  threshold contains the transcendental factor e, where exact equality is
  impossible and 50 digits decide the comparison outright.

``floor_scaled_power`` computes floor(m * (num/den)**n) with a guard band:
the fast Decimal path is trusted only when the fractional part is at least
1e-9 away from an integer, otherwise the exact big-integer quotient is used.
"""

import math
from decimal import Decimal, localcontext
from fractions import Fraction

PRECISION = 50
_FLOOR_GUARD = Decimal("1e-9")


def dec_ln(x: int | Fraction) -> Decimal:
    """Natural log of an exact positive integer or fraction, to 50 digits."""
    with localcontext() as ctx:
        ctx.prec = PRECISION
        if isinstance(x, Fraction):
            return Decimal(x.numerator).ln() - Decimal(x.denominator).ln()
        return Decimal(x).ln()


def ln_ratio(num: int, den: int) -> Decimal:
    """ln(num/den) for exact integers, to 50 digits."""
    with localcontext() as ctx:
        ctx.prec = PRECISION
        return Decimal(num).ln() - Decimal(den).ln()


def least_n_for_log_threshold(threshold: Decimal, step: Decimal, *, strict: bool) -> int:
    """Smallest integer n >= 0 with n*step > threshold (or >= when not strict).

    ``step`` must be positive.  Thresholds at or below zero yield 0 (or 1 for
    a strict comparison against exactly zero).
    """
    if step <= 0:
        raise ValueError("step must be positive")
    with localcontext() as ctx:
        ctx.prec = PRECISION
        q = threshold / step
    n = math.floor(q) + 1 if strict else math.ceil(q)
    return max(n, 0)


def least_power_exponent(m: int, num: int, den: int, *, strict: bool = True) -> int:
    """Smallest n >= 0 with (num/den)**n > m (or >= m when not strict).

    Requires num > den >= 1 and m >= 1.  The log-domain estimate is verified
    against the exact integer inequality num**n ? m * den**n and nudged if
    the estimate sat on a rounding boundary.
    """
    if num <= den:
        raise ValueError("ratio must exceed 1")
    if m < 1:
        return 0
    n = least_n_for_log_threshold(dec_ln(m), ln_ratio(num, den), strict=strict)

    def holds(j: int) -> bool:
        lhs, rhs = num**j, m * den**j
        return lhs > rhs if strict else lhs >= rhs

    while not holds(n):
        n += 1
    while n > 0 and holds(n - 1):
        n -= 1
    return n


def floor_scaled_power(m: int, num: int, den: int, n: int) -> int:
    """floor(m * (num/den)**n) computed exactly, for m >= 0, 0 < num < den."""
    if n < 0:
        raise ValueError("exponent must be nonnegative")
    if m == 0:
        return 0
    if n == 0:
        return m
    with localcontext() as ctx:
        ctx.prec = PRECISION
        log_e = Decimal(m).ln() + n * (Decimal(num).ln() - Decimal(den).ln())
        est = log_e.exp()
        frac = est - int(est)
    if frac < _FLOOR_GUARD or frac > 1 - _FLOOR_GUARD:
        return (m * num**n) // den**n
    return int(est)


def is_prime_power(n: int) -> tuple[int, int] | None:
    """Return (p, m) with n == p**m and p prime, or None.

    Trial factorization; intended for alphabet sizes, where n stays small.
    """
    if n < 2:
        return None
    p = None
    for cand in range(2, math.isqrt(n) + 1):
        if n % cand == 0:
            p = cand
            break
    if p is None:
        return (n, 1)
    m = 0
    rest = n
    while rest % p == 0:
        rest //= p
        m += 1
    return (p, m) if rest == 1 else None
