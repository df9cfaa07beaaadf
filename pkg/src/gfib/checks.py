"""Verification suites run by ``gfib verify``.

Each suite is split into independent tasks (usually one per (k, j) pair) so
the CLI can fan them out over worker processes.  A task returns a
``TaskResult`` whose ``lines`` are printed verbatim, in task order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import comb

from . import closedform, engine, padic, valuation
from .engine import SequenceSpec, basis_spec, generate, ones_spec, t_spec

SUITES = ("closedform", "identities", "residuals", "valuation")


@dataclass
class TaskResult:
    suite: str
    label: str
    checks: int = 0
    failures: list = field(default_factory=list)
    lines: list = field(default_factory=list)

    def check(self, ok: bool, what):
        self.checks += 1
        if not ok:
            self.failures.append(what)


def _random_specs(count: int, k_max: int, seed: int) -> list[SequenceSpec]:
    rng = random.Random(seed)
    specs = []
    for _ in range(count):
        k = rng.randint(2, max(2, min(k_max, 6)))
        specs.append(SequenceSpec(k, [rng.randint(-9, 9) for _ in range(k)]))
    return specs


# -- closedform -------------------------------------------------------------

def closedform_k(k: int, n_max: int) -> TaskResult:
    res = TaskResult("closedform", f"k={k}")
    s = generate(ones_spec(k), n_max)
    for n in range(n_max + 1):
        res.check(closedform.s_closed(k, n) == s[n], ("s", k, None, n))
    for j in range(k):
        b = generate(basis_spec(k, j), max(n_max, 3 * k + j + 2))
        for n in range(j + 1, n_max + 1):
            res.check(closedform.b_closed(k, j, n) == b[n], ("b", k, j, n))
            res.check(engine.b_via_s(k, j, n) == b[n], ("b_via_s", k, j, n))
        lo, hi = closedform.b_piecewise_range(k, j)
        for n in range(lo, hi + 1):
            res.check(closedform.b_piecewise(k, j, n) == b[n], ("b-piecewise", k, j, n))
    return res


def closedform_random(k_max: int, n_max: int, seed: int = 2024) -> TaskResult:
    res = TaskResult("closedform", "random F specs")
    for spec in _random_specs(50, k_max, seed):
        f = generate(spec, n_max)
        for n in range(spec.k, n_max + 1):
            res.check(closedform.f_closed(spec, n) == f[n], ("f", spec.k, spec.init, n))
    return res


# -- identities -------------------------------------------------------------

def identities_padic(limit: int) -> TaskResult:
    res = TaskResult("identities", "digit sums")
    s2, v2 = padic.s2, padic.v2
    for n in range(1, limit + 1):
        res.check(s2(n - 1) == s2(n) + v2(n) - 1, ("s2(n-1)", n))
    for m in range(1, limit + 1):
        vm = v2(m)
        for n in range(1, min(1 << vm, m + 1)):
            res.check(s2(m - n) == s2(m) + vm - s2(n) - v2(n), ("s2(m-n)", m, n))
    small = min(limit, 2000)
    prefix = [0]
    for i in range(1, small + 1):
        prefix.append(prefix[-1] + v2(i))
    for m in range(0, small + 1, 7):
        for n in range(m + 1, small + 1):
            res.check(s2(n) - s2(m) == n - m - (prefix[n] - prefix[m]), ("s2 difference", m, n))
    fact = 1
    for n in range(0, 400):
        fact *= max(n, 1)
        res.check(padic.v2_factorial(n) == padic.v2_or_infinite(fact), ("v2(n!)", n))
    for m in range(0, 300):
        for n in range(m + 1):
            res.check(padic.v2_binomial(m, n) == padic.v2(comb(m, n)), ("v2 binomial", m, n))
    return res


def identities_linear(k: int, n_max: int) -> TaskResult:
    res = TaskResult("identities", f"basis k={k}")
    basis = [generate(basis_spec(k, j), n_max) for j in range(k)]
    s, t = generate(ones_spec(k), n_max), generate(t_spec(k), n_max)
    for n in range(n_max + 1):
        res.check(s[n] == sum(b[n] for b in basis), ("S = sum B", k, n))
        res.check(t[n] == sum(b[n] for b in basis[1:]), ("T = sum B", k, n))
    back = engine.extend_backward(ones_spec(k), k)
    res.check(back[-1] == -(k - 2), ("S_-1", k))
    res.check(all(back[-i] == 1 for i in range(2, k + 1)), ("S_-2..-k", k))
    return res


# -- residuals --------------------------------------------------------------

def residuals_k(k: int, n_max: int) -> TaskResult:
    res = TaskResult("residuals", f"k={k}")
    for j in range(k):
        for n in range(n_max + 1):
            a, r = engine.index_decomp(k, n)
            if (r <= j - 1 and a >= 2) or (r >= j and a >= 1):
                res.check(valuation.theorem3_residual(k, j, n).holds, ("B residual", k, j, n))
    return res


def residuals_random(k_max: int, n_max: int, seed: int = 77) -> TaskResult:
    res = TaskResult("residuals", "random F specs")
    for spec in _random_specs(20, k_max, seed):
        for n in range(spec.k, n_max + 1):
            if engine.index_decomp(spec.k, n).a >= 2:
                res.check(valuation.fn1_residual(spec, n).holds, ("fn1", spec.k, spec.init, n))
    return res


# -- valuation --------------------------------------------------------------

def valuation_kj(k: int, j: int, n_max: int) -> TaskResult:
    report = valuation.verify_range(k, j, n_max)
    res = TaskResult("valuation", f"k={k} j={j}")
    res.checks = report.correct + report.wrong
    res.failures = [(name, k, j, n, pred, act) for name, n, pred, act in report.wrong_cases]
    res.lines.append(
        f"  k={k} j={j}: predicted-and-correct={report.correct} predicted-and-wrong={report.wrong} "
        f"not_covered={len(report.uncovered)} coverage={report.coverage:.4f}"
    )
    return res


def valuation_f(k_max: int, n_max: int, seed: int = 99) -> TaskResult:
    res = TaskResult("valuation", "random F specs")
    covered = 0
    total = 0
    for spec in _random_specs(50, k_max, seed):
        actual = valuation.oracle_valuations(spec, n_max)
        for n in range(spec.k, n_max + 1):
            total += 1
            preds = list(valuation.f_rules(spec, n))
            if preds:
                covered += 1
            for p in preds:
                res.check(p.value == actual[n], (p.rule, spec.k, spec.init, n, p.value, actual[n]))
    res.lines.append(f"  F specs: {covered}/{total} indices covered")
    return res


def plan(suite: str, k_max: int, n_max: int) -> list:
    """(callable, args) tasks for one suite name or "all"."""
    suites = SUITES if suite == "all" else (suite,)
    tasks = []
    for name in suites:
        if name == "closedform":
            tasks += [(closedform_k, (k, n_max)) for k in range(2, k_max + 1)]
            tasks.append((closedform_random, (k_max, n_max)))
        elif name == "identities":
            tasks.append((identities_padic, (max(n_max, 1000),)))
            tasks += [(identities_linear, (k, n_max)) for k in range(2, k_max + 1)]
        elif name == "residuals":
            tasks += [(residuals_k, (k, n_max)) for k in range(2, min(k_max, 6) + 1)]
            tasks.append((residuals_random, (k_max, n_max)))
        elif name == "valuation":
            tasks += [(valuation_kj, (k, j, n_max)) for k in range(2, k_max + 1) for j in range(k)]
            tasks.append((valuation_f, (k_max, min(n_max, 2000))))
        else:
            raise ValueError(f"unknown suite {name!r}")
    return tasks


def run_task(task):
    fn, args = task
    return fn(*args)
