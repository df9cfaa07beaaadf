import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gfib.padic import INFINITE, s2, v2, v2_binomial, v2_factorial, v2_or_infinite, v2_product
from oracles import naive_s2, naive_v2


@pytest.mark.parametrize("x, expected", [(1, 0), (24, 3), (-40, 3), (2**200 * 3, 200)])
def test_v2_examples(x, expected):
    assert v2(x) == expected


def test_v2_zero_raises():
    with pytest.raises(ValueError, match="infinite"):
        v2(0)


def test_v2_or_infinite():
    assert v2_or_infinite(0) == INFINITE
    assert v2_or_infinite(6) == 1
    assert v2_or_infinite(7) == 0


@pytest.mark.parametrize("n, expected", [(0, 0), (32, 1), (45, 4)])
def test_s2_examples(n, expected):
    assert s2(n) == expected


def test_s2_negative():
    with pytest.raises(ValueError):
        s2(-1)


@pytest.mark.parametrize("n, expected", [(0, 0), (4, 3), (10, 8)])
def test_v2_factorial_examples(n, expected):
    assert v2_factorial(n) == expected


@pytest.mark.parametrize("m, n, expected", [(4, 2, 1), (10, 5, 2), (7, 0, 0)])
def test_v2_binomial_examples(m, n, expected):
    assert v2_binomial(m, n) == expected


def test_v2_binomial_domain():
    with pytest.raises(ValueError):
        v2_binomial(3, 4)
    with pytest.raises(ValueError):
        v2_binomial(3, -1)


def test_v2_binomial_huge_arguments():
    # C(2^100, 2^99) has exactly one carry
    assert v2_binomial(2**100, 2**99) == 1
    assert v2_binomial(10**30, 0) == 0


def test_v2_factorial_matches_product():
    fact = 1
    for n in range(0, 300):
        fact *= max(n, 1)
        assert v2_factorial(n) == naive_v2(fact)


def test_v2_binomial_matches_exact_small():
    for m in range(0, 120):
        for n in range(m + 1):
            assert v2_binomial(m, n) == naive_v2(math.comb(m, n))


@given(st.integers(min_value=1, max_value=2**300), st.integers(min_value=1, max_value=2**300))
def test_v2_multiplicative(x, y):
    assert v2(x * y) == v2(x) + v2(y)
    assert v2(-x * y) == v2(x) + v2(y)


@given(st.integers(min_value=-(2**400), max_value=2**400).filter(bool))
def test_v2_matches_repeated_halving(x):
    assert v2(x) == naive_v2(x)


@given(st.integers(min_value=1, max_value=2**500))
def test_s2_bounds(n):
    assert s2(n) == naive_s2(n)
    assert 1 <= s2(n) <= n.bit_length()


@given(st.integers(min_value=0, max_value=5000), st.data())
def test_v2_binomial_property(m, data):
    n = data.draw(st.integers(min_value=0, max_value=m))
    assert v2_binomial(m, n) == naive_v2(math.comb(m, n))


@given(st.integers(min_value=1, max_value=10**12))
def test_s2_predecessor_property(n):
    assert s2(n - 1) == s2(n) + v2(n) - 1


def test_v2_product():
    assert v2_product(4, 6) == 3
    assert v2_product(0, 3) == INFINITE
