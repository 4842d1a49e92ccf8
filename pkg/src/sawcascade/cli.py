"""Command-line interface: evaluate, sample, list cells, integrate, verify.

All numeric input is exact: arguments accept lowest-terms fractions ("7/10",
"-1/3") or terminating decimals ("0.25"), never binary floats.  All numeric
output is emitted as exact fraction strings.  Given identical arguments
(seed included) every command produces byte-identical output: no
timestamps, no environment lookups, keys sorted.

Exit codes: 0 success (and all verifications passed), 1 at least one
verification failed, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence, TextIO

from sawcascade.antiderivative import (
    enclose_integral,
    eval_F,
    eval_Fk,
    eval_G,
)
from sawcascade.cells import cell, children, locate
from sawcascade.construction import (
    Certified,
    DomainError,
    Rat,
    eval_f,
    eval_f1,
    eval_fk,
    eval_g,
)
from sawcascade.reports import rat_str, report_to_dict
from sawcascade.suites import SUITE_ORDER, SuiteConfig, run_suite_reports

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2

POINT_FUNCTIONS = ("f1", "fk", "f", "g", "Fk", "F", "G")


def parse_rational(text: str) -> Rat:
    """Exact rational from 'p/q' or a terminating decimal string."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"not an exact rational: {text!r}") from exc


@dataclasses.dataclass(frozen=True)
class SampleConfig:
    fn: str
    a: Rat
    b: Rat
    count: int
    k: int
    K: int
    fmt: str


def _evaluate(fn: str, x: Rat, k: int, K: int) -> Certified:
    """Uniform certified view of every evaluable function."""
    if fn == "f1":
        return Certified(eval_f1(x), Fraction(0))
    if fn == "fk":
        return Certified(eval_fk(x, k), Fraction(0))
    if fn == "f":
        return eval_f(x, K)
    if fn == "g":
        return eval_g(x, K)
    if fn == "Fk":
        return Certified(eval_Fk(x, k), Fraction(0))
    if fn == "F":
        return eval_F(x, K)
    if fn == "G":
        return eval_G(x, K)
    raise DomainError(f"unknown function {fn!r}")


def emit_samples(cfg: SampleConfig) -> str:
    """Render evenly spaced certified samples as CSV or JSON text."""
    if cfg.count < 1:
        raise DomainError(f"count must be >= 1, got {cfg.count}")
    if cfg.a > cfg.b:
        raise DomainError(f"need a <= b, got a={cfg.a}, b={cfg.b}")
    xs: list[Rat] = []
    if cfg.count == 1:
        xs.append(cfg.a)
    else:
        step = (cfg.b - cfg.a) / (cfg.count - 1)
        xs = [cfg.a + step * i for i in range(cfg.count)]
    rows = []
    for x in xs:
        enc = _evaluate(cfg.fn, x, cfg.k, cfg.K)
        rows.append((x, enc))
    if cfg.fmt == "csv":
        lines = ["x,center,radius,exact"]
        for x, enc in rows:
            lines.append(
                f"{rat_str(x)},{rat_str(enc.center)},{rat_str(enc.radius)},"
                f"{'true' if enc.exact else 'false'}"
            )
        return "\n".join(lines) + "\n"
    payload = [
        {
            "x": rat_str(x),
            "center": rat_str(enc.center),
            "radius": rat_str(enc.radius),
            "exact": enc.exact,
        }
        for x, enc in rows
    ]
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def render_intervals(k: int, index_budget: int, window: tuple[Rat, Rat], fmt: str) -> str:
    """Render the level-k cells meeting the window, in spatial order."""
    if k < 1:
        raise DomainError(f"level k must be >= 1, got {k}")
    if (2 * index_budget + 1) ** k > 500_000:
        raise DomainError(
            f"listing (2*{index_budget}+1)^{k} cells is too large; "
            "narrow the budget or the level"
        )
    lo, hi = window
    ids = range(-index_budget, index_budget + 1)
    frontier = [cell((j,)) for j in ids]
    for _ in range(k - 1):
        frontier = [
            c for parent in frontier for c in children(parent.address, index_budget)
        ]
        frontier = [c for c in frontier if c.hi >= lo and c.lo <= hi]
    frontier = [c for c in frontier if c.hi >= lo and c.lo <= hi]
    frontier.sort(key=lambda c: (c.lo, c.hi))
    if fmt == "csv":
        lines = ["address,lo,hi,slope,intercept"]
        for c in frontier:
            address = ";".join(str(j) for j in c.address)
            lines.append(
                f"{address},{rat_str(c.lo)},{rat_str(c.hi)},"
                f"{rat_str(c.slope)},{rat_str(c.intercept)}"
            )
        return "\n".join(lines) + "\n"
    payload = [
        {
            "address": list(c.address),
            "lo": rat_str(c.lo),
            "hi": rat_str(c.hi),
            "slope": rat_str(c.slope),
            "intercept": rat_str(c.intercept),
        }
        for c in frontier
    ]
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def run_suite(name: str, cfg: SuiteConfig) -> dict:
    """Full JSON-ready verification report for one suite (or 'all')."""
    reports = run_suite_reports(name, cfg)
    cases = [report_to_dict(r) for r in reports]
    passed = sum(1 for r in reports if r.verdict)
    return {
        "suite": name,
        "seed": cfg.seed,
        "parameters": {
            "count": cfg.count,
            "K": cfg.K,
            "depth": cfg.depth,
            "index_budget": cfg.index_budget,
            "cells_budget": cfg.cells_budget,
            "n_max": cfg.n_max,
            "fan_budget": cfg.fan_budget,
            "delta": rat_str(cfg.delta),
            "max_level": cfg.max_level,
            "structure_max_level": cfg.structure_max_level,
        },
        "cases": cases,
        "summary": {"pass": passed, "fail": len(cases) - passed},
    }


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sawcascade",
        description=(
            "Exact evaluation and certified verification of the sawtooth "
            "cascade series, its signed variant, and their antiderivatives."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_out(p: argparse.ArgumentParser) -> None:
        p.add_argument("--out", help="write output to this file instead of stdout")

    p_eval = sub.add_parser("eval", help="evaluate one function at one point")
    p_eval.add_argument("--fn", choices=POINT_FUNCTIONS, required=True)
    p_eval.add_argument("--x", required=True, help="rational point, e.g. 7/10 or 0.25")
    p_eval.add_argument("--k", type=int, default=1, help="iterate/layer index for fk and Fk")
    p_eval.add_argument("--K", type=int, default=30, help="series truncation depth")
    add_out(p_eval)

    p_sample = sub.add_parser("sample", help="evenly spaced certified samples")
    p_sample.add_argument("--fn", choices=POINT_FUNCTIONS, required=True)
    p_sample.add_argument("--a", default="-1", help="left end of the range")
    p_sample.add_argument("--b", default="1", help="right end of the range")
    p_sample.add_argument("--count", type=int, default=101)
    p_sample.add_argument("--k", type=int, default=1)
    p_sample.add_argument("--K", type=int, default=30)
    p_sample.add_argument("--format", choices=("csv", "json"), default="csv")
    add_out(p_sample)

    p_intervals = sub.add_parser("intervals", help="list linearity cells of a level")
    p_intervals.add_argument("--k", type=int, default=1, help="cell level")
    p_intervals.add_argument("--index-budget", type=int, default=10)
    p_intervals.add_argument("--window", nargs=2, default=["-1", "1"],
                             metavar=("LO", "HI"))
    p_intervals.add_argument("--format", choices=("csv", "json"), default="csv")
    add_out(p_intervals)

    p_integrate = sub.add_parser(
        "integrate", help="certified enclosure of a layer integral from -1"
    )
    p_integrate.add_argument("--k", type=int, required=True, help="layer index")
    p_integrate.add_argument("--upto", default="1", help="upper limit in [-1, 1]")
    p_integrate.add_argument("--index-budget", type=int, default=50)
    add_out(p_integrate)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("suite", choices=SUITE_ORDER)
    p_verify.add_argument("--seed", type=int, default=20240601)
    p_verify.add_argument("--count", type=int, default=100)
    p_verify.add_argument("--K", type=int, default=30)
    p_verify.add_argument("--depth", type=int, default=40)
    p_verify.add_argument("--index-budget", type=int, default=50)
    p_verify.add_argument("--cells-budget", type=int, default=60)
    p_verify.add_argument("--n-max", type=int, default=50)
    p_verify.add_argument("--fan-budget", type=int, default=64)
    p_verify.add_argument("--delta", default="1/1000")
    p_verify.add_argument("--max-level", type=int, default=6)
    add_out(p_verify)

    return parser


def _write(text: str, out: Optional[str], stdout: TextIO) -> None:
    if out is None:
        stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)


def run(
    argv: Sequence[str],
    stdout: TextIO = sys.stdout,
    stderr: TextIO = sys.stderr,
) -> int:
    """Execute one CLI invocation; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "eval":
            enc = _evaluate(args.fn, parse_rational(args.x), args.k, args.K)
            payload = {"center": rat_str(enc.center), "radius": rat_str(enc.radius)}
            _write(json.dumps(payload, sort_keys=True) + "\n", args.out, stdout)
            return EXIT_OK
        if args.command == "sample":
            cfg = SampleConfig(
                fn=args.fn,
                a=parse_rational(args.a),
                b=parse_rational(args.b),
                count=args.count,
                k=args.k,
                K=args.K,
                fmt=args.format,
            )
            _write(emit_samples(cfg), args.out, stdout)
            return EXIT_OK
        if args.command == "intervals":
            window = (parse_rational(args.window[0]), parse_rational(args.window[1]))
            text = render_intervals(args.k, args.index_budget, window, args.format)
            _write(text, args.out, stdout)
            return EXIT_OK
        if args.command == "integrate":
            enc = enclose_integral(args.k, parse_rational(args.upto), args.index_budget)
            payload = {
                "lower": rat_str(enc.lower),
                "upper": rat_str(enc.upper),
                "width": rat_str(enc.width),
            }
            _write(json.dumps(payload, sort_keys=True) + "\n", args.out, stdout)
            return EXIT_OK
        if args.command == "verify":
            cfg = SuiteConfig(
                seed=args.seed,
                count=args.count,
                K=args.K,
                depth=args.depth,
                index_budget=args.index_budget,
                cells_budget=args.cells_budget,
                n_max=args.n_max,
                fan_budget=args.fan_budget,
                delta=parse_rational(args.delta),
                max_level=args.max_level,
            )
            report = run_suite(args.suite, cfg)
            _write(
                json.dumps(report, indent=2, sort_keys=True) + "\n",
                args.out,
                stdout,
            )
            summary = report["summary"]
            stderr.write(
                f"suite {args.suite}: {summary['pass']} passed, "
                f"{summary['fail']} failed\n"
            )
            return EXIT_OK if summary["fail"] == 0 else EXIT_VERIFICATION_FAILED
        raise DomainError(f"unknown command {args.command!r}")
    except DomainError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (ValueError, KeyError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
