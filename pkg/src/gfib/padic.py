"""2-adic helpers: binary digit sums and 2-adic orders.

Valuations of zero are reported as ``math.inf`` (exported here as ``INFINITE``)
so that comparisons such as ``v <= 4`` behave correctly without a fake large
integer standing in for the infinite case.
"""

import math

INFINITE = math.inf


def v2(x: int) -> int:
    """Exponent of the largest power of two dividing ``x``; the sign is ignored."""
    if x == 0:
        raise ValueError("zero has infinite valuation")
    x = abs(x)
    return (x & -x).bit_length() - 1


def v2_or_infinite(x: int):
    """Like :func:`v2` but returns ``INFINITE`` for zero."""
    if x == 0:
        return INFINITE
    return v2(x)


def s2(n: int) -> int:
    """Number of ones in the binary expansion of ``n >= 0``."""
    if n < 0:
        raise ValueError(f"s2 needs a nonnegative argument, got {n}")
    return n.bit_count()


def v2_factorial(n: int) -> int:
    """v2(n!) by Legendre's formula, n - s2(n)."""
    return n - s2(n)


def v2_binomial(m: int, n: int) -> int:
    """v2(C(m, n)) by Kummer: the number of carries when adding n and m - n in base 2.

    Never materializes the binomial, so ``m`` may be astronomically large.
    """
    if not 0 <= n <= m:
        raise ValueError(f"v2_binomial needs 0 <= n <= m, got m={m}, n={n}")
    return s2(n) + s2(m - n) - s2(m)


def v2_product(*factors: int):
    """v2 of a product, summed factor by factor (``INFINITE`` if any factor is 0)."""
    return sum(v2_or_infinite(f) for f in factors)
