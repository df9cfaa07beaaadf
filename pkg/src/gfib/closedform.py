"""Explicit finite-sum formulas for S_n(k), B_n(k, j) and F_n(k).

Each function here is contractually equal to the recurrence in
:mod:`gfib.engine`; the test-suite checks that term by term.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .engine import SequenceSpec


@dataclass(frozen=True)
class BinomialSumTerm:
    """One summand (-1)^i * C(binom_top, binom_bottom) * 2^pow2_exp."""

    i: int
    binom_top: int
    binom_bottom: int
    pow2_exp: int

    @property
    def sign(self) -> int:
        return -1 if self.i & 1 else 1

    @property
    def value(self) -> int:
        return self.sign * (comb(self.binom_top, self.binom_bottom) << self.pow2_exp)


def alternating_terms(k: int, m: int, upper: int):
    """Summands of sum_{i=1}^{upper} (-1)^i C(m-1-ik, i-1) 2^(m-i(k+1)).

    With m = n+1 this is the sum in the S formula; with m = n-j it is the
    second sum in the B formula.  An upper bound below 1 gives no terms.
    """
    for i in range(1, upper + 1):
        yield BinomialSumTerm(i, m - 1 - i * k, i - 1, m - i * (k + 1))


def _alt_sum(k: int, m: int) -> int:
    # The upper limit is floor(m/(k+1)) in every formula we evaluate.
    return sum(t.value for t in alternating_terms(k, m, m // (k + 1)))


def s_closed(k: int, n: int) -> int:
    """S_n(k) = 1 - (k-1) * sum_{i=1}^{floor((n+1)/(k+1))} (-1)^i C(n-ik, i-1) 2^(n+1-i(k+1))."""
    if k < 2 or n < 0:
        raise ValueError(f"needs k >= 2 and n >= 0, got k={k}, n={n}")
    return 1 - (k - 1) * _alt_sum(k, n + 1)


def b_closed(k: int, j: int, n: int) -> int:
    """B_n(k, j) as the difference of two alternating binomial sums; valid for n >= j+1."""
    if not 0 <= j < k:
        raise ValueError(f"basis index j must satisfy 0 <= j <= k-1, got j={j}, k={k}")
    if n < j + 1:
        raise ValueError(f"closed form for B needs n >= j+1, got n={n}, j={j}")
    return -_alt_sum(k, n + 1) + _alt_sum(k, n - j)


def f_closed(spec: SequenceSpec, n: int) -> int:
    """F_n(k) for an arbitrary initial vector, valid for n >= k."""
    k = spec.k
    if n < k:
        raise ValueError(f"closed form for F needs n >= k, got n={n}, k={k}")
    total = -spec.f_k * _alt_sum(k, n + 1)
    for j, c in enumerate(spec.init):
        if c:
            total += c * _alt_sum(k, n - j)
    return total


def b_piecewise_range(k: int, j: int) -> tuple[int, int]:
    """Inclusive index range covered by :func:`b_piecewise`."""
    return k, 3 * k + j + 2


def b_piecewise(k: int, j: int, n: int) -> int:
    """Elementary expressions for B_n(k, j) when k <= n <= 3k+j+2.

    The five ranges are tried in order; each adds one correction term to the
    previous one.
    """
    if not 0 <= j < k:
        raise ValueError(f"basis index j must satisfy 0 <= j <= k-1, got j={j}, k={k}")
    if k <= n <= k + j:
        return 1 << (n - k)
    value = (1 << (n - k)) - (1 << (n - k - j - 1)) if n >= k + j + 1 else None
    if k + j + 1 <= n <= 2 * k:
        return value
    if 2 * k + 1 <= n <= 2 * k + j + 1:
        return value - ((n - 2 * k) << (n - 2 * k - 1))
    if n < 2 * k + j + 2 or n > 3 * k + j + 2:
        raise ValueError(f"n={n} outside [{k}, {3 * k + j + 2}] for k={k}, j={j}")
    value += -((n - 2 * k) << (n - 2 * k - 1)) + ((n - 2 * k - j - 1) << (n - 2 * k - j - 2))
    if n <= 3 * k + 1:
        return value
    # (n-3k-1)(n-3k) is a product of consecutive integers, so the half is exact
    return value + (((n - 3 * k - 1) * (n - 3 * k) // 2) << (n - 3 * k - 2))
