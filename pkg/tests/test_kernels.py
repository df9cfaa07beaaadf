import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gfib import kernels
from gfib.kernels import RULES, VALUE_INF, VALUE_NONE, predict_b_batch, s2_array, v2_array, v2_scan_mod64
from gfib.padic import INFINITE
from gfib.valuation import predict_b
from oracles import naive_s2, naive_terms, naive_v2, unit

PATHS = [pytest.param(True, id="numba"), pytest.param(False, id="numpy")]


def decode(value, rule):
    if value == VALUE_NONE:
        return None, None
    return (INFINITE if value == VALUE_INF else int(value)), RULES[rule]


@pytest.mark.parametrize("use_numba", PATHS)
@pytest.mark.parametrize("k", range(2, 9))
def test_batch_matches_scalar(use_numba, k):
    ns = np.arange(0, 2500, dtype=np.int64)
    for j in range(k):
        values, rules = predict_b_batch(k, j, ns, use_numba=use_numba)
        for n, v, code in zip(ns, values, rules):
            p = predict_b(k, j, int(n))
            assert decode(v, code) == (p.value, p.rule), (k, j, n)


@pytest.mark.parametrize("use_numba", PATHS)
def test_batch_matches_scalar_large(use_numba):
    rng = np.random.default_rng(5)
    for k in range(2, 9):
        ns = rng.integers(0, 2**40, size=400, dtype=np.int64)
        for j in range(k):
            values, rules = predict_b_batch(k, j, ns, use_numba=use_numba)
            for n, v, code in zip(ns, values, rules):
                p = predict_b(k, j, int(n))
                assert decode(v, code) == (p.value, p.rule)


@pytest.mark.parametrize("use_numba", PATHS)
def test_batch_sound_against_recurrence(use_numba):
    for k in (2, 3, 5):
        for j in range(k):
            actual = [naive_v2(x) for x in naive_terms(unit(k, j), 600)]
            values, rules = predict_b_batch(k, j, np.arange(601), use_numba=use_numba)
            for n in range(601):
                v, _ = decode(values[n], rules[n])
                if v is not None:
                    assert v == actual[n]


def test_batch_domain():
    with pytest.raises(ValueError):
        predict_b_batch(3, 3, [1])
    with pytest.raises(ValueError):
        predict_b_batch(3, 0, [-1])


@pytest.mark.parametrize("use_numba", PATHS)
def test_scan_matches_exact(use_numba):
    for init in ([1, 0, 0], [1, 1, 1], [0, 1, 1, 1], [1, 3], [-5, 7, 2, 0, 9], [0, 0, 0]):
        exact = naive_terms(init, 700)
        got = v2_scan_mod64(init, 700, use_numba=use_numba)
        for n, x in enumerate(exact):
            want = naive_v2(x)
            if want == INFINITE or want >= 64:
                assert got[n] == -1
            else:
                assert got[n] == want


@pytest.mark.parametrize("use_numba", PATHS)
def test_scan_short_ranges(use_numba):
    assert list(v2_scan_mod64([4, 1, 2], 0, use_numba=use_numba)) == [2]
    assert list(v2_scan_mod64([4, 1, 2], 3, use_numba=use_numba)) == [2, 0, 1, 0]
    with pytest.raises(ValueError):
        v2_scan_mod64([1, 1], -1, use_numba=use_numba)


def test_scan_reports_high_valuations_as_unknown():
    # F = 2^70 * B(2, 0): every nonzero term has v2 >= 70
    got = v2_scan_mod64([2**70, 0], 20)
    assert (got == -1).all()


@settings(max_examples=60)
@given(st.lists(st.integers(min_value=0, max_value=2**62), min_size=1, max_size=200))
def test_digit_arrays(xs):
    arr = np.array(xs, dtype=np.int64)
    assert list(s2_array(arr)) == [naive_s2(x) for x in xs]
    nz = arr[arr != 0]
    assert list(v2_array(nz)) == [naive_v2(int(x)) for x in nz]
    assert list(v2_array(-nz)) == [naive_v2(int(x)) for x in nz]


def test_digit_array_domain():
    with pytest.raises(ValueError):
        s2_array([-1])
    with pytest.raises(ValueError):
        v2_array([3, 0])


@pytest.mark.parametrize("flag, expected", [("1", "False"), ("0", "True"), ("", "True")])
def test_env_flag_selects_path(flag, expected):
    env = dict(os.environ, GFIB_DISABLE_NUMBA=flag)
    out = subprocess.run(
        [sys.executable, "-c", "from gfib import kernels; print(kernels.USE_NUMBA)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == expected


def test_default_path_follows_flag(monkeypatch):
    monkeypatch.setattr(kernels, "USE_NUMBA", False)
    values, _ = predict_b_batch(3, 0, np.arange(50))
    ref, _ = predict_b_batch(3, 0, np.arange(50), use_numba=True)
    assert (values == ref).all()


def test_benchmark_runs(capsys):
    import importlib.util
    from pathlib import Path

    path = Path(__file__).parent.parent / "benchmarks" / "bench_kernels.py"
    spec = importlib.util.spec_from_file_location("bench_kernels", path)
    bench = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(bench)
    bench.main(["--size", "1000", "--scan", "500", "--repeat", "1"])
    out = capsys.readouterr().out
    assert "predict_b_batch" in out and "v2_scan_mod64" in out
