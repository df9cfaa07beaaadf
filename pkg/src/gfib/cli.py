"""``gfib`` command line: gen | closed | v2 | verify.

Exit codes: 0 success, 2 usage or domain error, 3 a prediction disagreed
with the recurrence (a soundness bug).
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, Optional

from . import checks, closedform, engine, valuation
from .engine import SequenceSpec, basis_spec, generate, ones_spec, t_spec
from .padic import INFINITE, v2_or_infinite

FIELDS = ("k", "j", "n", "value", "v2", "predicted", "rule", "agree")
DEFAULT_ORACLE_LIMIT = 10**5
BACKWARD_DEPTH_LIMIT = 10**4

EXIT_USAGE = 2
EXIT_UNSOUND = 3


class UsageError(Exception):
    pass


class SoundnessError(Exception):
    pass


def _render_valuation(v):
    if v is None:
        return None
    return "inf" if v == INFINITE else int(v)


def make_record(k, n, j=None, value=None, v2=None, predicted=None, rule=None, agree=None) -> dict:
    if agree is None and v2 is not None and predicted is not None:
        agree = v2 == predicted
    return {
        "k": k,
        "j": j,
        "n": n,
        "value": None if value is None else str(value),
        "v2": _render_valuation(v2),
        "predicted": _render_valuation(predicted),
        "rule": rule,
        "agree": agree,
    }


def _cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    return str(x)


def write_records(records: Iterable[dict], fmt: str, out=None):
    out = out or sys.stdout
    if fmt == "json":
        for rec in records:
            out.write(json.dumps(rec) + "\n")
        return
    if fmt == "csv":
        writer = csv.writer(out, lineterminator="\r\n")
    else:
        writer = csv.writer(out, delimiter="\t", lineterminator="\n", quoting=csv.QUOTE_NONE, escapechar="\\")
    writer.writerow(FIELDS)
    for rec in records:
        writer.writerow([_cell(rec[f]) for f in FIELDS])


def _parse_cell(name: str, text: str):
    if text == "":
        return None
    if name in ("k", "j", "n"):
        return int(text)
    if name in ("v2", "predicted"):
        return text if text == "inf" else int(text)
    if name == "agree":
        return text == "true"
    return text


def read_records(text: str, fmt: str) -> list[dict]:
    """Inverse of :func:`write_records`."""
    if fmt == "json":
        return [json.loads(line) for line in text.splitlines() if line.strip()]
    if fmt == "csv":
        rows = list(csv.reader(text.splitlines()))
    else:
        rows = list(csv.reader(text.splitlines(), delimiter="\t", quoting=csv.QUOTE_NONE, escapechar="\\"))
    header, body = rows[0], rows[1:]
    return [{name: _parse_cell(name, cell) for name, cell in zip(header, row)} for row in body]


def _parse_init(text: str) -> list[int]:
    try:
        return [int(c) for c in text.split(",")]
    except ValueError:
        raise UsageError(f"--init must be comma-separated integers, got {text!r}") from None


def _spec_from_args(args) -> tuple[SequenceSpec, Optional[int]]:
    if args.init is not None:
        init = _parse_init(args.init)
        if len(init) != args.k:
            raise UsageError(f"--init has {len(init)} values, expected k={args.k}")
        return SequenceSpec(args.k, init), None
    if getattr(args, "basis", None) is not None:
        return basis_spec(args.k, args.basis), args.basis
    if getattr(args, "ones", False):
        return ones_spec(args.k), None
    if getattr(args, "t", False):
        return t_spec(args.k), None
    raise UsageError("one of --init, --basis, --ones, --t is required")


def oracle_limit(args=None) -> int:
    if args is not None and getattr(args, "oracle_limit", None) is not None:
        return args.oracle_limit
    env = os.environ.get("GFIB_ORACLE_LIMIT")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"GFIB_ORACLE_LIMIT must be an integer, got {env!r}") from None
    return DEFAULT_ORACLE_LIMIT


# -- subcommands ------------------------------------------------------------

def cmd_gen(args) -> int:
    if args.k < 2:
        raise UsageError("--k must be >= 2")
    spec, j = _spec_from_args(args)
    if args.from_ < -BACKWARD_DEPTH_LIMIT:
        raise UsageError(f"--from below -{BACKWARD_DEPTH_LIMIT} is not supported")
    if args.to < args.from_:
        raise UsageError("--to must be >= --from")
    win = engine.window(spec, args.from_, args.to + 1)
    records = (
        make_record(spec.k, n, j=j, value=None if args.no_value else t, v2=v2_or_infinite(t))
        for n, t in win.items()
    )
    write_records(records, args.format)
    return 0


def cmd_closed(args) -> int:
    k, n = args.k, args.n
    which = args.which
    j = args.j
    if which in ("b", "b-piecewise") and j is None:
        raise UsageError(f"--which {which} needs --j")
    if which == "s":
        value, spec = closedform.s_closed(k, n), ones_spec(k)
    elif which == "b":
        value, spec = closedform.b_closed(k, j, n), basis_spec(k, j)
    elif which == "b-piecewise":
        value, spec = closedform.b_piecewise(k, j, n), basis_spec(k, j)
    else:
        if args.init is None:
            raise UsageError("--which f needs --init")
        init = _parse_init(args.init)
        if len(init) != k:
            raise UsageError(f"--init has {len(init)} values, expected k={k}")
        spec = SequenceSpec(k, init)
        value = closedform.f_closed(spec, n)
    agree = None
    if args.check:
        agree = generate(spec, n)[n] == value
    write_records([make_record(k, n, j=j, value=value, v2=v2_or_infinite(value), agree=agree)], args.format)
    return 0 if agree in (None, True) else EXIT_UNSOUND


def _combined_prediction(preds: list) -> tuple:
    covered = [p for p in preds if p.covered]
    if not covered:
        return None, None
    values = {p.value for p in covered}
    rule = ";".join(p.rule for p in covered)
    if len(values) > 1:
        raise SoundnessError(f"rules disagree: {rule} -> {sorted(map(str, values))}")
    return covered[0].value, rule


def cmd_v2(args) -> int:
    k, n = args.k, args.n
    if args.init is not None:
        init = _parse_init(args.init)
        if len(init) != k:
            raise UsageError(f"--init has {len(init)} values, expected k={k}")
        spec, j = SequenceSpec(k, init), None
        preds = list(valuation.f_rules(spec, n))
    elif args.j is not None:
        spec, j = basis_spec(k, args.j), args.j
        preds = list(valuation.b_rules(k, j, n))
        table = valuation.table_predictor(k)
        if table is not None:
            preds.append(table(j, n))
    else:
        raise UsageError("v2 needs --j (basis sequence) or --init")
    predicted, rule = _combined_prediction(preds)
    actual = None
    if not args.predict_only:
        limit = oracle_limit(args)
        if n > limit:
            raise UsageError(f"n={n} exceeds the oracle limit {limit}; pass --predict-only")
        actual = v2_or_infinite(generate(spec, n)[n])
    rec = make_record(k, n, j=j, v2=actual, predicted=predicted, rule=rule)
    write_records([rec], args.format)
    if rec["agree"] is False:
        print(f"soundness violation at k={k} j={j} n={n}: predicted {predicted}, actual {actual}", file=sys.stderr)
        return EXIT_UNSOUND
    return 0


def cmd_verify(args) -> int:
    tasks = checks.plan(args.suite, args.k_max, args.n_max)
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(checks.run_task, tasks))  # map keeps task order
    else:
        results = [checks.run_task(t) for t in tasks]
    failures = 0
    for suite in dict.fromkeys(r.suite for r in results):
        group = [r for r in results if r.suite == suite]
        n_checks = sum(r.checks for r in group)
        n_fail = sum(len(r.failures) for r in group)
        failures += n_fail
        print(f"{suite}: {n_checks} checks, {n_fail} failures")
        for r in group:
            for line in r.lines:
                print(line)
            for what in r.failures[:20]:
                print(f"  FAIL {r.label}: {what}")
    print("OK" if failures == 0 else f"FAILED ({failures})")
    return 0 if failures == 0 else EXIT_UNSOUND


# -- argument parsing -------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gfib", description="k-order generalized Fibonacci toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("csv", "json", "tsv"), default="csv")

    p = sub.add_parser("gen", help="generate terms with their 2-adic orders")
    p.add_argument("--k", type=int, required=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--init", help="comma-separated initial values c0,...,c{k-1}")
    src.add_argument("--basis", type=int, metavar="J", help="basis sequence B_n(k, J)")
    src.add_argument("--ones", action="store_true", help="all-ones initial vector")
    src.add_argument("--t", action="store_true", help="initial vector (0, 1, ..., 1)")
    p.add_argument("--from", dest="from_", type=int, default=0)
    p.add_argument("--to", type=int, required=True)
    p.add_argument("--no-value", action="store_true", help="omit the decimal term")
    add_format(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("closed", help="evaluate a closed form")
    p.add_argument("--which", choices=("s", "b", "f", "b-piecewise"), required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--j", type=int)
    p.add_argument("--init")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--check", action="store_true", help="compare with the recurrence")
    add_format(p)
    p.set_defaults(func=cmd_closed)

    p = sub.add_parser("v2", help="predict (and check) a 2-adic order")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--j", type=int)
    p.add_argument("--init")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--predict-only", action="store_true")
    p.add_argument("--oracle-limit", type=int, default=None)
    add_format(p)
    p.set_defaults(func=cmd_v2)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", choices=checks.SUITES + ("all",), default="all")
    p.add_argument("--k-max", type=int, default=8)
    p.add_argument("--n-max", type=int, default=400)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"gfib: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SoundnessError as exc:
        print(f"gfib: soundness violation: {exc}", file=sys.stderr)
        return EXIT_UNSOUND
    except ValueError as exc:
        print(f"gfib: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
