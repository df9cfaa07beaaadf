"""2-adic orders of B_n(k, j) and F_n(k) without computing the terms.

The predictors only ever look at the index decomposition n = a(k+1) + r and
at digit sums of small integers, so a call at n = 10**9 costs a handful of
word operations.  Every rule is a hypothesis/conclusion pair taken literally
from the case analysis of the valuation theorems; when no rule applies the
predictor says so instead of guessing.

The congruence checkers (``theorem3_residual``, ``fn1_residual``) and
``verify_range`` do use the recurrence, since their job is to audit the rules.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import comb
from typing import Iterator, Optional, Union

from . import kernels
from .engine import SequenceSpec, basis_spec, generate, index_decomp
from .padic import INFINITE, v2, v2_binomial, v2_or_infinite

ValuationValue = Union[int, float]  # float only for INFINITE


@dataclass(frozen=True)
class Prediction:
    """A predicted 2-adic order and the rule that produced it.

    ``value is None`` means no rule covers the index.
    """

    value: Optional[ValuationValue]
    rule: Optional[str]

    @property
    def covered(self) -> bool:
        return self.value is not None


NOT_COVERED = Prediction(None, None)


@dataclass(frozen=True)
class Deltas:
    case: str  # "low_r" or "high_r"
    d1: Optional[int] = None
    d2: Optional[int] = None
    d3: Optional[int] = None
    d4: Optional[int] = None

    @property
    def positive(self) -> bool:
        if self.case == "low_r":
            return self.d1 > 0 and self.d2 > 0
        return self.d3 > 0 and self.d4 > 0


@dataclass(frozen=True)
class ResidualCheck:
    """``residual`` should be divisible by 2**modulus_exp."""

    modulus_exp: int
    residual: int

    @property
    def holds(self) -> bool:
        return self.residual % (1 << self.modulus_exp) == 0


def _check_kj(k: int, j: int):
    if k < 2:
        raise ValueError(f"order k must be >= 2, got {k}")
    if not 0 <= j < k:
        raise ValueError(f"basis index j must satisfy 0 <= j <= k-1, got j={j}, k={k}")


def deltas(k: int, j: int, n: int) -> Deltas:
    """Gap quantities certifying that one explicit term dominates B_n(k, j) 2-adically."""
    _check_kj(k, j)
    a, r = index_decomp(k, n)
    if r <= j - 1:
        if a < 2:
            raise ValueError(f"out of definitional range: r={r} <= j-1 needs a >= 2, got a={a}")
        lead = v2_binomial(a + r, a - 1) + r + 1
        return Deltas(
            "low_r",
            d1=(r + k + 2) - lead,
            d2=v2_binomial(a + r + k - j - 1, a - 2) + (r + k + 1 - j) - lead,
        )
    if a < 1:
        raise ValueError(f"out of definitional range: r={r} >= j needs a >= 1, got a={a}")
    lead = v2_binomial(a + r - j - 1, a - 1) + (r - j)
    return Deltas(
        "high_r",
        d3=(r + k + 1 - j) - lead,
        d4=v2_binomial(a + r, a - 1) + (r + 1) - lead,
    )


def b_rules(k: int, j: int, n: int) -> Iterator[Prediction]:
    """Every rule whose hypotheses hold at (k, j, n), in precedence order.

    :func:`predict_b` takes the first; the test-suite checks that all of
    them agree.
    """
    _check_kj(k, j)
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n < k:
        yield Prediction(0 if n == j else INFINITE, "init")
        return
    a, r = index_decomp(k, n)  # a >= 1 from here on
    if r == -1 or r == j:
        yield Prediction(0, "T4i")
    va = v2(a)
    a_even = va > 0
    if r == 0:
        if 1 <= j < k - 1 and va == k + 1:
            yield Prediction(k + 2, "L5")
        if j == k - 1 and a_even and 2 * va <= k:
            yield Prediction(1 + 2 * va, "L6")
        if j >= 1 and not a_even:
            yield Prediction(1, "T5i")
        if 1 <= j <= k - 2 and a_even and va <= k:
            yield Prediction(1 + va, "T5ii")
    elif r == 1:
        if j == 0 and a_even and 2 * va <= k:
            yield Prediction(1 + 2 * va, "L7")
        if j >= 2 and not a_even and v2(a + 1) <= k + 1:
            yield Prediction(1 + v2(a + 1), "T5iii")
        if j >= 2 and a_even and va <= k + 1:
            yield Prediction(1 + va, "T5iv")
        if j == 0 and not a_even:
            yield Prediction(1, "T5v")
    if j >= 1 and r == j + 1 <= k - 1 and va <= k:
        yield Prediction(1 + va, "T5vi")
    if a == 1:
        # k <= n <= 2k: B_n is 2^(n-k), or 2^(n-k) - 2^(n-k-j-1) = 2^(n-k-j-1) (2^(j+1) - 1)
        yield Prediction(n - k if n <= k + j else n - k - j - 1, "L4")
    if 0 <= r <= j - 1 and a >= 2:
        if deltas(k, j, n).positive:
            yield Prediction(r + 1 + v2_binomial(a + r, a - 1), "T4ii")
    elif j + 1 <= r <= k - 1:
        if deltas(k, j, n).positive:
            yield Prediction(r - j + v2_binomial(a + r - j - 1, a - 1), "T4iii")


def predict_b(k: int, j: int, n: int) -> Prediction:
    """Predicted v2(B_n(k, j)), or ``NOT_COVERED``."""
    return next(b_rules(k, j, n), NOT_COVERED)


def _v2_pair(a: int) -> ValuationValue:
    # v2(a(a+1)); one factor is odd
    return v2_or_infinite(a) + v2_or_infinite(a + 1)


def _k3_j0(n: int) -> Prediction:
    if n % 4 == 0:
        return Prediction(0, "K3J0:n=0mod4")
    if n % 8 == 5:
        return Prediction(1, "K3J0:n=5mod8")
    if n % 16 == 9:
        return Prediction(3, "K3J0:n=9mod16")
    if n % 4 == 2:
        w = _v2_pair((n - 2) // 4)
        if w <= 4:
            return Prediction(1 + w, "K3J0:n=4a+2")
    if n % 4 == 3:
        return Prediction(0, "K3J0:n=3mod4")
    return NOT_COVERED


def _k3_j1(n: int) -> Prediction:
    if n % 4 == 0:
        va = v2_or_infinite(n // 4)
        if va <= 4:
            return Prediction(1 + va, "K3J1:n=4a")
    if n % 2 == 1:
        return Prediction(0, "K3J1:n=1mod2")
    if n % 4 == 2:
        va = v2_or_infinite((n - 2) // 4)
        if va <= 3:
            return Prediction(1 + va, "K3J1:n=4a+2")
    return NOT_COVERED


def _k3_j2(n: int) -> Prediction:
    if n % 8 == 4:
        return Prediction(1, "K3J2:n=4mod8")
    if n % 16 == 8:
        return Prediction(3, "K3J2:n=8mod16")
    if n % 4 == 1:
        w = _v2_pair((n - 1) // 4)
        if w <= 4:
            return Prediction(1 + w, "K3J2:n=4a+1")
    if n % 4 == 2:
        return Prediction(0, "K3J2:n=2mod4")
    if n % 4 == 3:
        return Prediction(0, "K3J2:n=3mod4")
    return NOT_COVERED


def _k4_j0(n: int) -> Prediction:
    a, c = divmod(n, 5)
    if c == 0:
        return Prediction(0, "K4J0:n=0mod5")
    if c == 1:
        va = v2_or_infinite(a)
        if va <= 2:
            return Prediction(1 + 2 * va, "K4J0:n=5a+1")
    elif c == 2:
        w = _v2_pair(a)
        if w <= 5:
            return Prediction(1 + w, "K4J0:n=5a+2")
    elif c == 3:
        if v2(a + 3) >= 2:
            return Prediction(3, "K4J0:n=5a+3")
    else:
        return Prediction(0, "K4J0:n=4mod5")
    return NOT_COVERED


def _k4_j1(n: int) -> Prediction:
    a, c = divmod(n, 5)
    if c == 0:
        va = v2_or_infinite(a)
        if va <= 5:
            return Prediction(1 + va, "K4J1:n=5a")
    elif c == 1:
        return Prediction(0, "K4J1:n=1mod5")
    elif c == 2:
        va = v2_or_infinite(a)
        if va <= 4:
            return Prediction(1 + va, "K4J1:n=5a+2")
    elif c == 3:
        w = _v2_pair(a)
        if w <= 5:
            return Prediction(1 + w, "K4J1:n=5a+3")
    else:
        return Prediction(0, "K4J1:n=4mod5")
    return NOT_COVERED


def _k4_j2(n: int) -> Prediction:
    a, c = divmod(n, 5)
    if c == 0:
        va = v2_or_infinite(a)
        if va <= 5:
            return Prediction(1 + va, "K4J2:n=5a")
    elif c == 1:
        w = _v2_pair(a)
        if w <= 5:
            return Prediction(1 + w, "K4J2:n=5a+1")
    elif c == 2:
        return Prediction(0, "K4J2:n=2mod5")
    elif c == 3:
        va = v2_or_infinite(a)
        if va <= 4:
            return Prediction(1 + va, "K4J2:n=5a+3")
    else:
        return Prediction(0, "K4J2:n=4mod5")
    return NOT_COVERED


def _k4_j3(n: int) -> Prediction:
    a, c = divmod(n, 5)
    if c == 0:
        va = v2_or_infinite(a)
        if va <= 2:
            return Prediction(1 + 2 * va, "K4J3:n=5a")
    elif c == 1:
        w = _v2_pair(a)
        if w <= 5:
            return Prediction(1 + w, "K4J3:n=5a+1")
    elif c == 2:
        if v2_or_infinite(a - 1) >= 2:
            return Prediction(3, "K4J3:n=5a+2")
    elif c == 3:
        return Prediction(0, "K4J3:n=3mod5")
    else:
        return Prediction(0, "K4J3:n=4mod5")
    return NOT_COVERED


_K3_TABLES = (_k3_j0, _k3_j1, _k3_j2)
_K4_TABLES = (_k4_j0, _k4_j1, _k4_j2, _k4_j3)


def predict_b_k3(j: int, n: int) -> Prediction:
    """Complete case table for v2(B_n(3, j))."""
    _check_kj(3, j)
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return _K3_TABLES[j](n)


def predict_b_k4(j: int, n: int) -> Prediction:
    """Complete case table for v2(B_n(4, j))."""
    _check_kj(4, j)
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return _K4_TABLES[j](n)


def table_predictor(k: int):
    """The dedicated case-table predictor for k in {3, 4}, else None."""
    if k == 3:
        return predict_b_k3
    if k == 4:
        return predict_b_k4
    return None


def _binom_weight(a: int, t: int) -> int:
    # multiplier of F_{r-t} in the dominant sum: C(a+t-1, a-1) 2^t
    return comb(a + t - 1, a - 1) << t


def f_rules(spec: SequenceSpec, n: int) -> Iterator[Prediction]:
    """Every F-valuation rule whose hypotheses hold at n, most specific first."""
    k = spec.k
    if n < k:
        raise ValueError(f"needs n >= k, got n={n}, k={k}")
    a, r = index_decomp(k, n)
    F = spec.init
    if r == -1:
        if spec.f_k % 2:
            yield Prediction(0, "Fn2i")
        if a >= 2:
            # F_n = -(-1)^a W mod 2^(k+1), W = F_k + sum_j F_j C(k+a-j-2, a-2) 2^(k-j)
            w = spec.f_k + sum(F[t] * (comb(k + a - t - 2, a - 2) << (k - t)) for t in range(k))
            if w and v2(w) <= k:
                yield Prediction(v2(w), "Fn1i")
        return
    if a < 2:
        return
    if v2_or_infinite(F[r]) == 0:
        yield Prediction(0, "CorI")
    if r >= 1 and v2_or_infinite(F[r]) == 1 and v2_or_infinite(a * F[r - 1]) > 0:
        yield Prediction(1, "CorII")
    if r >= 2:
        p = F[r] + 2 * a * F[r - 1]
        if p and v2(p) <= 2 and v2_or_infinite(comb(a + 1, a - 1) * F[r - 2]) > 0:
            yield Prediction(v2(p), "CorIII")
    partial = 0
    for i in range(1, r + 1):
        partial += _binom_weight(a, i - 1) * F[r - i + 1]
        if partial and v2(partial) <= i and v2_or_infinite(comb(a + i - 1, a - 1) * F[r - i]) > 0:
            yield Prediction(v2(partial), "CorIV")
            break
    w = sum(_binom_weight(a, t) * F[r - t] for t in range(r + 1))
    if w and v2(w) <= r:
        yield Prediction(v2(w), "Fn2ii")


def predict_f(spec: SequenceSpec, n: int) -> Prediction:
    """Predicted v2(F_n(k)) for an arbitrary initial vector, or ``NOT_COVERED``."""
    return next(f_rules(spec, n), NOT_COVERED)


def theorem3_residual(k: int, j: int, n: int) -> ResidualCheck:
    """B_n(k, j) minus its two explicit low-order terms; divisible by 2**modulus_exp."""
    _check_kj(k, j)
    a, r = index_decomp(k, n)
    sign = -1 if a % 2 else 1
    if r <= j - 1:
        if a < 2:
            raise ValueError(f"case r <= j-1 needs a >= 2, got a={a} (n={n})")
        explicit = -sign * (comb(a + r + k - j - 1, a - 2) << (r + k + 1 - j)) - sign * (
            comb(a + r, a - 1) << (r + 1)
        )
        modulus_exp = r + k + 2
    else:
        if a < 1:
            raise ValueError(f"case r >= j needs a >= 1, got a={a} (n={n})")
        explicit = -sign * (comb(a + r, a - 1) << (r + 1)) + sign * (comb(a + r - j - 1, a - 1) << (r - j))
        modulus_exp = r + k + 1 - j
    b = generate(basis_spec(k, j), n)[n]
    return ResidualCheck(modulus_exp, b - explicit)


def fn1_residual(spec: SequenceSpec, n: int) -> ResidualCheck:
    """F_n minus the explicit terms of its low-order expansion; divisible by 2**(k+1)."""
    k = spec.k
    if n < k:
        raise ValueError(f"needs n >= k, got n={n}, k={k}")
    a, r = index_decomp(k, n)
    if a < 2:
        raise ValueError(f"needs a >= 2, got a={a} (n={n})")
    F = spec.init
    sign = -1 if a % 2 else 1
    if r == -1:
        explicit = -sign * spec.f_k - sign * sum(F[t] * (comb(k + a - t - 2, a - 2) << (k - t)) for t in range(k))
    else:
        explicit = (
            -sign * spec.f_k * (comb(a + r, a - 1) << (r + 1))
            + sign * sum(F[t] * (comb(a + r - t - 1, a - 1) << (r - t)) for t in range(r + 1))
            - sign * sum(F[t] * (comb(k + a + r - t - 1, a - 2) << (k + 1 + r - t)) for t in range(r + 1, k))
        )
    return ResidualCheck(k + 1, generate(spec, n)[n] - explicit)


def oracle_valuations(spec: SequenceSpec, n_max: int, fast: bool = True) -> list:
    """v2(F_0), ..., v2(F_{n_max}) from the recurrence.

    With ``fast`` the scan runs modulo 2**64 and only indices whose residue
    vanishes are settled with exact big integers.
    """
    if not fast:
        return [v2_or_infinite(t) for t in generate(spec, n_max).terms]
    scan = kernels.v2_scan_mod64(spec.init, n_max).tolist()
    missing = [n for n, v in enumerate(scan) if v < 0]
    if missing:
        exact = generate(spec, max(missing))
        for n in missing:
            scan[n] = v2_or_infinite(exact[n])
    return scan


@dataclass
class CoverageReport:
    k: int
    j: int
    n_max: int
    correct: int = 0
    wrong: int = 0
    uncovered: list = field(default_factory=list)
    wrong_cases: list = field(default_factory=list)  # (predictor, n, predicted, actual)
    rule_hits: Counter = field(default_factory=Counter)

    @property
    def total(self) -> int:
        return self.n_max + 1

    @property
    def coverage(self) -> float:
        return 1 - len(self.uncovered) / self.total


def verify_range(k: int, j: int, n_max: int, oracle=None) -> CoverageReport:
    """Check predict_b (and the k=3/k=4 tables) against actual valuations for n <= n_max.

    ``oracle`` may supply the valuations as a sequence indexed by n; by
    default they come from :func:`oracle_valuations`.  An index counts as covered
    when any predictor answers, and as wrong when any answer disagrees.
    """
    _check_kj(k, j)
    if n_max < k:
        raise ValueError(f"n_max must be >= k, got {n_max}")
    if oracle is None:
        oracle = oracle_valuations(basis_spec(k, j), n_max)
    predictors = [("predict_b", lambda n: predict_b(k, j, n))]
    table = table_predictor(k)
    if table is not None:
        predictors.append((table.__name__, lambda n: table(j, n)))
    report = CoverageReport(k, j, n_max)
    for n in range(n_max + 1):
        actual = oracle[n]
        hit = bad = False
        for name, predict in predictors:
            p = predict(n)
            if not p.covered:
                continue
            hit = True
            report.rule_hits[p.rule] += 1
            if p.value != actual:
                bad = True
                report.wrong_cases.append((name, n, p.value, actual))
        if bad:
            report.wrong += 1
        elif hit:
            report.correct += 1
        else:
            report.uncovered.append(n)
    return report
