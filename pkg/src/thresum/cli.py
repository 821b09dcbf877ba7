"""Command line interface.

Subcommands:

* estimate  - evaluate the estimators on a CSV of observations
* table1    - emit the canonical improvement table (csv or json)
* risk      - exact squared-error risks for given parameters
* simulate  - seeded Monte Carlo risk or prediction-risk estimates
* dominance - pointwise loss comparison scan

Exit codes: 0 success, 1 dominance violation found, 2 input or parameter
error, 3 unsupported (family, direction) combination. Output is CSV for
estimate/table1 (6 significant digits; the reference table keeps its
published 3 decimals) and full-precision JSON elsewhere or with --json.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from .distributions import Family, FamilyParam, validate_sample
from .estimators import (
    Direction,
    ThresholdRule,
    UnsupportedRuleError,
    aggregate_estimate,
    improved_estimate,
    in_zero_region,
)
from .experiments import table1
from .risk import (
    ABSOLUTE_LOSS,
    SQUARED_LOSS,
    dominance_scan,
    exact_report,
    mc_comparison,
)

EXIT_OK = 0
EXIT_DOMINANCE = 1
EXIT_INPUT = 2
EXIT_UNSUPPORTED = 3

# Sampling parameters for continuous dominance scans when none are given.
_DEFAULT_SCAN_THETA = {Family.EXPONENTIAL: 1.0, Family.UNIFORM_SCALE: 2.0,
                       Family.POISSON: 1.0, Family.GEOMETRIC: 0.5}

_LOSSES = {"squared": SQUARED_LOSS, "absolute": ABSOLUTE_LOSS}


def _thetas(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"could not parse theta list {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="thresum",
                                     description="Threshold-sum estimation and risk analysis")
    sub = parser.add_subparsers(dest="command", required=True)

    fam_kwargs = dict(required=True, choices=[f.value for f in Family],
                      help="distribution family of the observations")

    p = sub.add_parser("estimate", help="evaluate the estimators on observed data")
    p.add_argument("--family", **fam_kwargs)
    p.add_argument("--threshold", type=float, required=True, metavar="A")
    p.add_argument("--direction", choices=["le", "gt"], default="le")
    p.add_argument("--input", required=True, help="CSV file with a single 'value' column")
    p.add_argument("--json", action="store_true", help="emit JSON instead of CSV")

    p = sub.add_parser("table1", help="emit the canonical improvement table")
    p.add_argument("--format", choices=["csv", "json"], default="csv")

    p = sub.add_parser("risk", help="exact squared-error risks")
    p.add_argument("--family", **fam_kwargs)
    p.add_argument("--theta", type=_thetas, required=True, metavar="T1[,T2,...]")
    p.add_argument("--threshold", type=float, required=True, metavar="A")

    p = sub.add_parser("simulate", help="Monte Carlo risk estimation")
    p.add_argument("--family", **fam_kwargs)
    p.add_argument("--theta", type=_thetas, required=True, metavar="T1[,T2,...]")
    p.add_argument("--threshold", type=float, required=True, metavar="A")
    p.add_argument("--direction", choices=["le", "gt"], default="le")
    p.add_argument("--loss", choices=["squared", "absolute"], default="squared")
    p.add_argument("--reps", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--predict", action="store_true",
                   help="target the unobserved-replicate prediction sum instead")

    p = sub.add_parser("dominance", help="pointwise loss comparison scan")
    p.add_argument("--family", **fam_kwargs)
    p.add_argument("--threshold", type=float, required=True, metavar="A")
    p.add_argument("-n", type=int, required=True, dest="n")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--xmax", type=int, help="lattice bound for discrete enumeration")
    group.add_argument("--samples", type=int, help="sample count for continuous families")
    p.add_argument("--seed", type=int, help="required with --samples")
    p.add_argument("--theta", type=_thetas,
                   help="sampling parameter(s) for continuous scans")

    return parser


def _float_text(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


def _emit_record(record: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(record))
        return
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(record.keys())
    writer.writerow([_float_text(v) for v in record.values()])


def _read_values(path: str) -> list[float]:
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if any(cell.strip() for cell in r)]
    if not rows:
        raise ValueError(f"{path}: empty input")
    header = [c.strip().lower() for c in rows[0]]
    if "value" not in header:
        raise ValueError(f"{path}: expected a 'value' column")
    col = header.index("value")
    values = []
    for r in rows[1:]:
        cell = r[col].strip() if col < len(r) else ""
        if cell == "":
            continue
        try:
            values.append(float(cell))
        except ValueError:
            raise ValueError(f"{path}: non-numeric value {cell!r}")
    return values


def _cmd_estimate(args) -> int:
    kind = Family(args.family)
    values = validate_sample(kind, _read_values(args.input))
    rule = ThresholdRule(args.threshold, Direction(args.direction))
    record = {
        "n": int(values.size),
        "family": kind.value,
        "A": rule.threshold,
        "direction": rule.direction.value,
        "v": aggregate_estimate(kind, rule, values),
    }
    if rule.direction is Direction.AT_MOST:
        record["v_star"] = improved_estimate(kind, rule, values)
        record["zeroed_set_hit"] = in_zero_region(kind, rule, values)
    _emit_record(record, args.json)
    return EXIT_OK


def _cmd_table1(args) -> int:
    grid = table1()
    if args.format == "csv":
        sys.stdout.write(grid.to_csv(decimals=3))
        return EXIT_OK
    cells = [
        {"A": a, "n": n, "improvement": grid.cell(a, n)}
        for a in grid.a_values for n in grid.n_values
    ]
    print(json.dumps({"a_values": list(grid.a_values),
                      "n_values": list(grid.n_values),
                      "cells": cells}))
    return EXIT_OK


def _cmd_risk(args) -> int:
    fams = [FamilyParam(Family(args.family), t) for t in args.theta]
    report = exact_report(fams, ThresholdRule(args.threshold))
    print(json.dumps(report.to_dict()))
    return EXIT_OK


def _cmd_simulate(args) -> int:
    fams = [FamilyParam(Family(args.family), t) for t in args.theta]
    rule = ThresholdRule(args.threshold, Direction(args.direction))
    report = mc_comparison(_LOSSES[args.loss], fams, rule, args.reps, args.seed,
                           predict=args.predict)
    print(json.dumps(report.to_dict()))
    return EXIT_OK


def _cmd_dominance(args) -> int:
    kind = Family(args.family)
    thetas = args.theta
    if thetas is None:
        thetas = [_DEFAULT_SCAN_THETA[kind]]
    if len(thetas) == 1:
        thetas = thetas * args.n
    if len(thetas) != args.n:
        raise ValueError(f"expected 1 or {args.n} theta values, got {len(thetas)}")
    fams = [FamilyParam(kind, t) for t in thetas]
    rule = ThresholdRule(args.threshold)
    kwargs = {}
    if args.xmax is not None:
        kwargs["xmax"] = args.xmax
    else:
        if args.seed is None:
            raise ValueError("--samples requires --seed")
        kwargs.update(samples=args.samples, seed=args.seed)
    total_violations = 0
    strict = None
    for loss in (SQUARED_LOSS, ABSOLUTE_LOSS):
        scan = dominance_scan(fams, rule, loss, **kwargs)
        total_violations += scan.violations
        strict = scan.strict_improvements if strict is None else min(strict, scan.strict_improvements)
    print(json.dumps({"violations": total_violations, "strict_points": strict}))
    return EXIT_DOMINANCE if total_violations > 0 else EXIT_OK


_COMMANDS = {
    "estimate": _cmd_estimate,
    "table1": _cmd_table1,
    "risk": _cmd_risk,
    "simulate": _cmd_simulate,
    "dominance": _cmd_dominance,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except UnsupportedRuleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
