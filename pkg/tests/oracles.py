"""Brute-force references that share no code with the package."""

import math


def naive_terms(init, n_max):
    """F_0..F_{n_max} by summing the previous k terms directly."""
    k = len(init)
    t = list(init[: n_max + 1])
    while len(t) <= n_max:
        t.append(sum(t[-k:]))
    return t


def naive_backward(init, depth):
    """F_{-depth}..F_{k-1}: solve F_n = F_{n-1}+...+F_{n-k} for the lowest term."""
    k = len(init)
    t = list(init)
    for _ in range(depth):
        # t[k-1] = t[k-2] + ... + t[0] + t_new, with t_new the term before t[0]
        t.insert(0, t[k - 1] - sum(t[: k - 1]))
    return t


def naive_v2(x):
    """2-adic order by repeated halving; math.inf for zero."""
    if x == 0:
        return math.inf
    x, v = abs(x), 0
    while x % 2 == 0:
        x //= 2
        v += 1
    return v


def naive_s2(n):
    return bin(n).count("1")


def unit(k, j):
    return [1 if i == j else 0 for i in range(k)]
