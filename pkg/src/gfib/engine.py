"""Recurrence oracle for k-order generalized Fibonacci sequences.

Everything else in the package is checked against the terms produced here.
Terms are Python ints, so there is no overflow at any index.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Sequence

# Debug counter: number of sequence terms materialized, keyed by producer.
allocation_stats: Counter = Counter()


@dataclass(frozen=True)
class SequenceSpec:
    """Order ``k`` and the initial terms F_0 ... F_{k-1}."""

    k: int
    init: tuple[int, ...]

    def __post_init__(self):
        if self.k < 2:
            raise ValueError(f"order k must be >= 2, got {self.k}")
        object.__setattr__(self, "init", tuple(int(c) for c in self.init))
        if len(self.init) != self.k:
            raise ValueError(f"expected {self.k} initial values, got {len(self.init)}")

    @property
    def f_k(self) -> int:
        """F_k, the first term produced by the recurrence."""
        return sum(self.init)


@dataclass(frozen=True)
class SequenceWindow:
    """A contiguous run of terms F_start ... F_{start + len(terms) - 1}."""

    spec: SequenceSpec
    start: int
    terms: tuple[int, ...]

    @property
    def stop(self) -> int:
        """One past the last covered index."""
        return self.start + len(self.terms)

    def covers(self, n: int) -> bool:
        return self.start <= n < self.stop

    def __getitem__(self, n: int) -> int:
        if not self.covers(n):
            raise IndexError(f"index {n} outside window [{self.start}, {self.stop})")
        return self.terms[n - self.start]

    def __len__(self) -> int:
        return len(self.terms)

    def items(self):
        return zip(range(self.start, self.stop), self.terms)


class IndexDecomp(NamedTuple):
    """n = a(k+1) + r with -1 <= r <= k-1."""

    a: int
    r: int


def basis_spec(k: int, j: int) -> SequenceSpec:
    """Initial vector with a single 1 at position j (the sequence B_n(k, j))."""
    if not 0 <= j < k:
        raise ValueError(f"basis index j must satisfy 0 <= j <= k-1, got j={j}, k={k}")
    return SequenceSpec(k, tuple(int(i == j) for i in range(k)))


def ones_spec(k: int) -> SequenceSpec:
    """All-ones initial vector (the sequence S_n(k))."""
    return SequenceSpec(k, (1,) * k)


def t_spec(k: int) -> SequenceSpec:
    """Initial vector (0, 1, ..., 1): the classical k-step Fibonacci numbers T_n(k)."""
    return SequenceSpec(k, (0,) + (1,) * (k - 1))


def _forward(k: int, seed: Sequence[int], count: int) -> list[int]:
    # seed holds at least k consecutive terms; append `count` more.
    # Sliding sum: F_n = F_{n-1} + (F_{n-1} - F_{n-k-1}) once a (k+1)-th term exists.
    out = list(seed)
    if count <= 0:
        return out
    acc = sum(out[-k:])
    for _ in range(count):
        out.append(acc)
        acc += acc - out[-k - 1]
    return out


@lru_cache(maxsize=64)
def _generate_cached(spec: SequenceSpec, n_max: int) -> SequenceWindow:
    k = spec.k
    if n_max < k:
        terms = spec.init[: n_max + 1]
    else:
        terms = _forward(k, spec.init, n_max - k + 1)
    allocation_stats["generate"] += len(terms)
    return SequenceWindow(spec, 0, tuple(terms))


def generate(spec: SequenceSpec, n_max: int) -> SequenceWindow:
    """Terms F_0 ... F_{n_max}."""
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    return _generate_cached(spec, n_max)


def extend_backward(spec: SequenceSpec, depth: int) -> SequenceWindow:
    """Terms F_{-depth} ... F_{k-1}, running the recurrence backwards.

    F_{n-k} = F_n - F_{n-1} - ... - F_{n-k+1}.
    """
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth}")
    k = spec.k
    rev = list(reversed(spec.init))  # descending indices; rev[-1] is the lowest known term
    for _ in range(depth):
        rev.append(rev[-k] - sum(rev[-(k - 1):]))
    allocation_stats["extend_backward"] += len(rev)
    return SequenceWindow(spec, -depth, tuple(reversed(rev)))


def window(spec: SequenceSpec, start: int, stop: int) -> SequenceWindow:
    """Terms F_start ... F_{stop-1}; start may be negative."""
    if stop <= start:
        raise ValueError(f"empty range [{start}, {stop})")
    if start >= 0:
        full = generate(spec, stop - 1)
        return SequenceWindow(spec, start, full.terms[start:])
    back = extend_backward(spec, -start)
    terms = list(back.terms)
    if stop > spec.k:
        terms = _forward(spec.k, terms, stop - spec.k)
    return SequenceWindow(spec, start, tuple(terms[: stop - start]))


def decompose(spec: SequenceSpec) -> list[int]:
    """Coefficients c_j with F_n = sum_j c_j B_n(k, j); they are the initial terms."""
    return list(spec.init)


def recompose(coeffs: Sequence[int], n_max: int) -> list[int]:
    """Rebuild F_0 ... F_{n_max} as the linear combination of basis sequences."""
    k = len(coeffs)
    out = [0] * (n_max + 1)
    for j, c in enumerate(coeffs):
        if c == 0:
            continue
        for n, b in generate(basis_spec(k, j), n_max).items():
            out[n] += c * b
    return out


def doubling_term(window: SequenceWindow, n: int) -> int:
    """F_n = 2 F_{n-1} - F_{n-k-1}, valid for n >= k+1."""
    k = window.spec.k
    if n < k + 1:
        raise ValueError(f"doubling relation needs n >= k+1, got n={n}, k={k}")
    if not (window.covers(n - 1) and window.covers(n - k - 1)):
        raise ValueError(f"window [{window.start}, {window.stop}) does not cover n-1 and n-k-1 for n={n}")
    return 2 * window[n - 1] - window[n - k - 1]


def telescoped_term(window: SequenceWindow, n: int, m: int) -> int:
    """F_n = 2^(n-m+1) F_{m-1} - sum_{i=m-k-1}^{n-k-1} 2^(n-k-1-i) F_i, for n >= m >= k+1."""
    k = window.spec.k
    if not n >= m >= k + 1:
        raise ValueError(f"telescoped sum needs n >= m >= k+1, got n={n}, m={m}, k={k}")
    lo, hi = m - k - 1, n - k - 1
    if not (window.covers(m - 1) and window.covers(lo) and window.covers(hi)):
        raise ValueError(f"window [{window.start}, {window.stop}) too short for n={n}, m={m}")
    tail = sum(window[i] << (hi - i) for i in range(lo, hi + 1))
    return (window[m - 1] << (n - m + 1)) - tail


def b_via_s(k: int, j: int, n: int) -> int:
    """B_n(k, j) = (S_n(k) - S_{n-j-1}(k)) / (k-1), for n >= j+1."""
    if not 0 <= j < k:
        raise ValueError(f"basis index j must satisfy 0 <= j <= k-1, got j={j}, k={k}")
    if n < j + 1:
        raise ValueError(f"needs n >= j+1, got n={n}, j={j}")
    lo = n - j - 1
    s = window(ones_spec(k), min(lo, 0), n + 1)
    q, rem = divmod(s[n] - s[lo], k - 1)
    if rem:
        raise ArithmeticError(f"inexact division by k-1 for k={k}, j={j}, n={n}")
    return q


def index_decomp(k: int, n: int) -> IndexDecomp:
    """Unique (a, r) with n = a(k+1) + r and -1 <= r <= k-1."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    a, r = divmod(n, k + 1)
    if r == k:
        return IndexDecomp(a + 1, -1)
    return IndexDecomp(a, r)
