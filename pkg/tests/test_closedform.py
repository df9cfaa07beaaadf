import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gfib.closedform import (
    alternating_terms,
    b_closed,
    b_piecewise,
    b_piecewise_range,
    f_closed,
    s_closed,
)
from gfib.engine import SequenceSpec, b_via_s
from oracles import naive_terms, unit


@pytest.mark.parametrize("k, n, expected", [(3, 2, 1), (3, 7, 31), (2, 5, 8)])
def test_s_closed_examples(k, n, expected):
    assert s_closed(k, n) == expected


def test_s_closed_worked_terms():
    # k=3, n=7: i=1 contributes -16, i=2 contributes +1
    terms = list(alternating_terms(3, 8, 8 // 4))
    assert [t.value for t in terms] == [-16, 1]
    assert [t.sign for t in terms] == [-1, 1]
    assert [t.pow2_exp for t in terms] == [4, 0]


@pytest.mark.parametrize("k, j, n, expected", [(3, 0, 1, 0), (3, 0, 9, 24), (4, 2, 5, 2)])
def test_b_closed_examples(k, j, n, expected):
    assert b_closed(k, j, n) == expected


def test_b_closed_domain():
    with pytest.raises(ValueError):
        b_closed(3, 2, 2)
    with pytest.raises(ValueError):
        b_closed(3, 3, 5)


@pytest.mark.parametrize(
    "k, init, n, expected", [(2, [2, 5], 5, 31), (3, [1, 1, 1], 7, 31), (3, [1, 0, 0], 9, 24)]
)
def test_f_closed_examples(k, init, n, expected):
    assert f_closed(SequenceSpec(k, init), n) == expected


def test_f_closed_domain():
    with pytest.raises(ValueError):
        f_closed(SequenceSpec(3, [1, 2, 3]), 2)


@pytest.mark.parametrize("k, j, n, expected", [(4, 2, 5, 2), (3, 0, 5, 2), (3, 1, 8, 20)])
def test_b_piecewise_examples(k, j, n, expected):
    assert b_piecewise(k, j, n) == expected


def test_b_piecewise_domain():
    with pytest.raises(ValueError):
        b_piecewise(3, 1, 2)
    with pytest.raises(ValueError):
        b_piecewise(3, 1, 3 * 3 + 1 + 3)


@pytest.mark.parametrize("k", range(2, 9))
def test_closed_forms_match_oracle(k):
    s = naive_terms([1] * k, 400)
    assert [s_closed(k, n) for n in range(401)] == s
    for j in range(k):
        b = naive_terms(unit(k, j), 400)
        assert [b_closed(k, j, n) for n in range(j + 1, 401)] == b[j + 1 :]


@pytest.mark.parametrize("k", range(2, 13))
def test_piecewise_matches_oracle(k):
    for j in range(k):
        lo, hi = b_piecewise_range(k, j)
        b = naive_terms(unit(k, j), hi)
        assert [b_piecewise(k, j, n) for n in range(lo, hi + 1)] == b[lo:]


@pytest.mark.parametrize("k", range(2, 9))
def test_consistency_triangle(k):
    for j in range(k):
        for n in range(j + 1, 301):
            assert b_closed(k, j, n) == b_via_s(k, j, n)


def test_f_closed_random_specs():
    rng = random.Random(11)
    for _ in range(50):
        k = rng.randint(2, 8)
        init = [rng.randint(-20, 20) for _ in range(k)]
        f = naive_terms(init, 400)
        spec = SequenceSpec(k, init)
        assert all(f_closed(spec, n) == f[n] for n in range(k, 401))


@settings(max_examples=60)
@given(
    st.integers(min_value=2, max_value=9),
    st.lists(st.integers(-100, 100), min_size=9, max_size=9),
    st.integers(min_value=0, max_value=250),
)
def test_linearity(k, raw, extra):
    init = raw[:k]
    n = k + extra
    assert f_closed(SequenceSpec(k, init), n) == sum(c * b_closed(k, j, n) for j, c in enumerate(init))


@given(st.integers(min_value=2, max_value=40), st.data())
def test_piecewise_last_branch_half_is_exact(k, data):
    j = data.draw(st.integers(min_value=0, max_value=k - 1))
    for n in range(3 * k + 2, 3 * k + j + 3):
        assert (n - 3 * k - 1) * (n - 3 * k) % 2 == 0


def test_piecewise_branches_agree_at_shared_endpoints():
    # for j = 0, n = k is both "k <= n <= k+j" and the start of the closed form's range
    for k in range(2, 13):
        assert b_piecewise(k, 0, k) == b_closed(k, 0, k) == 1
