"""Array kernels for range scans.

Each kernel has a numba implementation and a numpy one.  The numba path is
used when numba imports and ``GFIB_DISABLE_NUMBA`` is unset (or "0"); the
scalar functions in :mod:`gfib.valuation` stay the reference and the tests
hold both paths equal to them.

Encoding used by the batch predictor: ``value`` is the predicted valuation,
``VALUE_INF`` for an infinite one and ``VALUE_NONE`` when no rule applies;
``rule`` indexes :data:`RULES` (-1 when not covered).
"""

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

USE_NUMBA = numba is not None and os.environ.get("GFIB_DISABLE_NUMBA", "0").lower() in ("", "0", "false", "no")

RULES = ("init", "T4i", "L5", "L6", "T5i", "T5ii", "L7", "T5iii", "T5iv", "T5v", "T5vi", "L4", "T4ii", "T4iii")
(R_INIT, R_T4I, R_L5, R_L6, R_T5I, R_T5II, R_L7, R_T5III, R_T5IV, R_T5V, R_T5VI, R_L4, R_T4II, R_T4III) = range(len(RULES))

VALUE_NONE = -1
VALUE_INF = -2

_MASK64 = (1 << 64) - 1


def _njit(fn):
    if numba is None:
        return fn
    return numba.njit(cache=True, nogil=True)(fn)


# ---------------------------------------------------------------------------
# numba kernels

@_njit
def _popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@_njit
def _ctz(x):
    # x > 0
    return _popcount((x & -x) - 1)


@_njit
def _vbin(m, n):
    return _popcount(n) + _popcount(m - n) - _popcount(m)


@_njit
def _predict_one(k, j, n):
    if n < k:
        return (0, R_INIT) if n == j else (VALUE_INF, R_INIT)
    a = n // (k + 1)
    r = n - a * (k + 1)
    if r == k:
        a += 1
        r = -1
    if r == -1 or r == j:
        return 0, R_T4I
    va = _ctz(a)
    even = va > 0
    if r == 0:
        if 1 <= j and j < k - 1 and va == k + 1:
            return k + 2, R_L5
        if j == k - 1 and even and 2 * va <= k:
            return 1 + 2 * va, R_L6
        if j >= 1 and not even:
            return 1, R_T5I
        if 1 <= j and j <= k - 2 and even and va <= k:
            return 1 + va, R_T5II
    elif r == 1:
        if j == 0 and even and 2 * va <= k:
            return 1 + 2 * va, R_L7
        if j >= 2 and not even and _ctz(a + 1) <= k + 1:
            return 1 + _ctz(a + 1), R_T5III
        if j >= 2 and even and va <= k + 1:
            return 1 + va, R_T5IV
        if j == 0 and not even:
            return 1, R_T5V
    if j >= 1 and r == j + 1 and r <= k - 1 and va <= k:
        return 1 + va, R_T5VI
    if a == 1:
        if n <= k + j:
            return n - k, R_L4
        return n - k - j - 1, R_L4
    if 0 <= r and r <= j - 1 and a >= 2:
        lead = _vbin(a + r, a - 1) + r + 1
        d1 = (r + k + 2) - lead
        d2 = _vbin(a + r + k - j - 1, a - 2) + (r + k + 1 - j) - lead
        if d1 > 0 and d2 > 0:
            return r + 1 + _vbin(a + r, a - 1), R_T4II
    elif j + 1 <= r and r <= k - 1:
        lead = _vbin(a + r - j - 1, a - 1) + (r - j)
        d3 = (r + k + 1 - j) - lead
        d4 = _vbin(a + r, a - 1) + (r + 1) - lead
        if d3 > 0 and d4 > 0:
            return r - j + _vbin(a + r - j - 1, a - 1), R_T4III
    return VALUE_NONE, -1


@_njit
def _predict_b_batch_numba(k, j, ns):
    values = np.empty(ns.shape[0], dtype=np.int64)
    rules = np.empty(ns.shape[0], dtype=np.int64)
    for i in range(ns.shape[0]):
        v, rule = _predict_one(k, j, ns[i])
        values[i] = v
        rules[i] = rule
    return values, rules


@_njit
def _v2_scan_numba(init, n_max):
    k = init.shape[0]
    terms = np.empty(n_max + 1, dtype=np.uint64)
    out = np.empty(n_max + 1, dtype=np.int64)
    acc = np.uint64(0)
    for i in range(n_max + 1):
        if i < k:
            t = init[i]
            acc += t
        elif i == k:
            t = acc
        else:
            t = terms[i - 1] + terms[i - 1] - terms[i - k - 1]
        terms[i] = t
        if t == np.uint64(0):
            out[i] = -1
        else:
            c = 0
            while (t & np.uint64(1)) == np.uint64(0):
                t >>= np.uint64(1)
                c += 1
            out[i] = c
    return out


# ---------------------------------------------------------------------------
# numpy fallbacks

def _np_v2(x):
    # x > 0, int64; isolate the lowest set bit and count the ones below it
    return np.bitwise_count((x & -x) - 1).astype(np.int64)


def _np_vbin(m, n):
    pc = np.bitwise_count
    return pc(n).astype(np.int64) + pc(m - n) - pc(m)


def _predict_b_batch_numpy(k, j, ns):
    ns = np.asarray(ns, dtype=np.int64)
    values = np.full(ns.shape, VALUE_NONE, dtype=np.int64)
    rules = np.full(ns.shape, -1, dtype=np.int64)
    a, r = np.divmod(ns, k + 1)
    wrap = r == k
    a = np.where(wrap, a + 1, a)
    r = np.where(wrap, -1, r)
    big = ns >= k
    a1 = np.maximum(a, 1)  # keeps bit tricks well defined where masked out
    a2 = np.maximum(a, 2)
    va = _np_v2(a1)
    va1 = _np_v2(a1 + 1)
    even = va > 0
    rc = np.clip(r, 0, None)

    # applied lowest precedence first, so later writes win
    low = big & (a >= 2) & (0 <= r) & (r <= j - 1)
    lead = _np_vbin(a2 + rc, a2 - 1) + rc + 1
    d1 = (rc + k + 2) - lead
    d2 = _np_vbin(a2 + rc + k - j - 1, a2 - 2) + (rc + k + 1 - j) - lead
    rj = np.maximum(rc, j)
    lead_h = _np_vbin(a1 + rj - j - 1, a1 - 1) + (rj - j)
    d3 = (rj + k + 1 - j) - lead_h
    d4 = _np_vbin(a1 + rj, a1 - 1) + (rj + 1) - lead_h
    high = big & (j + 1 <= r) & (r <= k - 1)
    table = [
        (high & (d3 > 0) & (d4 > 0), rj - j + _np_vbin(a1 + rj - j - 1, a1 - 1), R_T4III),
        (low & (d1 > 0) & (d2 > 0), rc + 1 + _np_vbin(a2 + rc, a2 - 1), R_T4II),
        (big & (a == 1), np.where(ns <= k + j, ns - k, ns - k - j - 1), R_L4),
        (big & (j >= 1) & (r == j + 1) & (r <= k - 1) & (va <= k), 1 + va, R_T5VI),
        (big & (r == 1) & (j == 0) & ~even, np.ones_like(ns), R_T5V),
        (big & (r == 1) & (j >= 2) & even & (va <= k + 1), 1 + va, R_T5IV),
        (big & (r == 1) & (j >= 2) & ~even & (va1 <= k + 1), 1 + va1, R_T5III),
        (big & (r == 1) & (j == 0) & even & (2 * va <= k), 1 + 2 * va, R_L7),
        (big & (r == 0) & (1 <= j) & (j <= k - 2) & even & (va <= k), 1 + va, R_T5II),
        (big & (r == 0) & (j >= 1) & ~even, np.ones_like(ns), R_T5I),
        (big & (r == 0) & (j == k - 1) & even & (2 * va <= k), 1 + 2 * va, R_L6),
        (big & (r == 0) & (1 <= j) & (j < k - 1) & (va == k + 1), np.full_like(ns, k + 2), R_L5),
        (big & ((r == -1) | (r == j)), np.zeros_like(ns), R_T4I),
        (~big, np.where(ns == j, 0, VALUE_INF), R_INIT),
    ]
    for mask, val, code in table:
        values = np.where(mask, val, values)
        rules = np.where(mask, code, rules)
    return values, rules


def _v2_scan_numpy(init, n_max):
    k = len(init)
    seed = [int(c) & _MASK64 for c in init]
    terms = seed[: n_max + 1]
    if n_max >= k:
        acc = sum(seed) & _MASK64
        terms.append(acc)
        for i in range(k + 1, n_max + 1):
            terms.append((2 * terms[i - 1] - terms[i - k - 1]) & _MASK64)
    t = np.array(terms, dtype=np.uint64)
    out = np.full(t.shape, -1, dtype=np.int64)
    nz = t != 0
    low = t[nz] & (~t[nz] + np.uint64(1))
    out[nz] = np.bitwise_count(low - np.uint64(1)).astype(np.int64)
    return out


# ---------------------------------------------------------------------------
# public entry points

def _check_kj(k, j):
    if k < 2 or not 0 <= j < k:
        raise ValueError(f"needs k >= 2 and 0 <= j <= k-1, got k={k}, j={j}")


def predict_b_batch(k, j, ns, use_numba=None):
    """Vectorized :func:`gfib.valuation.predict_b` over an int64 array of indices.

    Returns ``(values, rules)``; see the module docstring for the encoding.
    """
    _check_kj(k, j)
    ns = np.ascontiguousarray(ns, dtype=np.int64)
    if ns.size and ns.min() < 0:
        raise ValueError("indices must be >= 0")
    if use_numba is None:
        use_numba = USE_NUMBA
    if use_numba:
        return _predict_b_batch_numba(k, j, ns)
    return _predict_b_batch_numpy(k, j, ns)


def v2_scan_mod64(init, n_max, use_numba=None):
    """v2 of F_0 ... F_{n_max}, computed in the ring of integers mod 2**64.

    Entry n is exact whenever F_n is not divisible by 2**64; those that are
    (including F_n = 0) come back as -1 and need the exact recurrence.
    """
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    if use_numba is None:
        use_numba = USE_NUMBA
    if use_numba:
        seed = np.array([int(c) & _MASK64 for c in init], dtype=np.uint64)
        return _v2_scan_numba(seed, n_max)
    return _v2_scan_numpy(init, n_max)


def s2_array(x):
    """Binary digit sums of a nonnegative integer array."""
    x = np.asarray(x, dtype=np.int64)
    if x.size and x.min() < 0:
        raise ValueError("s2 needs nonnegative arguments")
    return np.bitwise_count(x).astype(np.int64)


def v2_array(x):
    """2-adic orders of a nonzero int64 array (sign ignored)."""
    x = np.abs(np.asarray(x, dtype=np.int64))
    if x.size and not x.all():
        raise ValueError("zero has infinite valuation")
    return _np_v2(x)
