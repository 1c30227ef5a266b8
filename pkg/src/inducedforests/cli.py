"""Command-line front end.

Every command prints one JSON document (or CSV for tables) containing the
resolved configuration, the result, and a separate ``metadata`` block with the
timestamp and version. Exit codes: 0 success, 1 failed verification or runtime
error, 2 usage error, 3 refused because a cap was exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import warnings
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

from . import __version__
from . import asymptotics as asy
from . import exact
from .errors import CapExceededError
from .gamma import a_delta_sequence

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_CAP = 3
OUTPUT_DIR_ENV = "INDUCEDFORESTS_OUTPUT_DIR"


class UsageError(ValueError):
    pass


def rational(text: str) -> Fraction:
    """Parse ``'a/b'`` or an integer exactly; a decimal is read as its exact value with a warning."""
    text = text.strip()
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc
    if "/" not in text and any(c in text for c in ".eE"):
        print(f"warning: decimal {text} read as the rational {value}", file=sys.stderr)
    return value


def int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _json_default(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, Path):
        return str(x)
    if hasattr(x, "item"):
        return x.item()
    raise TypeError(f"not JSON serialisable: {type(x).__name__}")


def _config(args) -> dict:
    skip = {"func", "handler"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _emit(args, result, fmt="json", rows=None, stream=None):
    stream = stream or sys.stdout
    if fmt == "csv" and rows is not None:
        buf = io.StringIO()
        fields = list(rows[0].keys()) if rows else []
        writer = csv.DictWriter(buf, fieldnames=fields)
        writer.writeheader()
        writer.writerows(rows)
        stream.write(buf.getvalue())
        return
    doc = {
        "command": args.command,
        "config": _config(args),
        "result": result,
        "metadata": {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "version": __version__,
        },
    }
    stream.write(json.dumps(doc, indent=2, sort_keys=True, default=_json_default) + "\n")


def _require(args, *names):
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        raise UsageError(f"{args.command} {getattr(args, 'kind', '')}: missing --{', --'.join(m.replace('_', '-') for m in missing)}")


def cmd_constants(args):
    seq = a_delta_sequence(args.delta_max, args.tol)
    rows = [{"delta": c.delta, "alpha": c.alpha, "a": c.a, "e_minus_a": c.gap} for c in seq]
    _emit(args, rows, args.format, rows)
    return EXIT_OK


def cmd_count(args):
    kind = args.kind
    if kind == "tree":
        _require(args, "n", "delta")
        value = exact.trees_bounded_degree_exact(args.n, args.delta)
    elif kind == "rooted-forest":
        _require(args, "n", "m", "delta")
        value = exact.rooted_forests_bounded_degree_exact(args.n, args.m, args.delta)
    elif kind == "containing-tree":
        _require(args, "n", "shape")
        value = exact.trees_containing_forest(args.n, args.shape)
    elif kind == "containing-forest":
        _require(args, "n", "h", "shape")
        value = exact.forests_containing_forest(args.n, args.h, args.shape)
    else:
        _require(args, "n", "m", "degrees")
        value = exact.trees_with_independent_set_and_degrees(args.n, args.m, args.degrees)
    _emit(args, {"kind": kind, "count": str(value)})
    return EXIT_OK


def cmd_moment(args):
    fn = exact.expected_induced_trees if args.kind == "Y" else exact.expected_induced_rooted_forests
    value = fn(args.n, args.k, args.p, args.delta)
    _emit(args, {"kind": args.kind, "exact": str(value), "decimal": float(value)})
    return EXIT_OK


def cmd_asymptotic(args):
    kind = args.kind
    if kind == "tree":
        est = asy.tree_count_asymptotic(args.n, args.delta)
    elif kind == "weighted-forest":
        _require(args, "w")
        est = asy.weighted_forest_sum_asymptotic(args.n, float(args.w), args.delta)
    else:
        est = asy.tree_count_via_probability_identity(args.n, args.delta, args.alpha)
    result = est.to_dict()
    if args.compare_exact:
        if args.n > exact.EXACT_CAP:
            raise CapExceededError(f"n={args.n} exceeds the exact-count cap {exact.EXACT_CAP}")
        if kind == "weighted-forest":
            s = exact.weighted_forest_sum_exact(args.n, args.w, args.delta)
            log_exact = math.log(s.numerator) - math.log(s.denominator)
        else:
            log_exact = math.log(exact.trees_bounded_degree_exact(args.n, args.delta))
        result["log_exact"] = log_exact
        result["ratio"] = math.exp(est.log_value - log_exact)
    _emit(args, result)
    return EXIT_OK


def cmd_window(args):
    if args.regime == "dense":
        pred = asy.concentration_window_dense(args.n, float(args.p), args.delta, args.epsilon, args.unbounded)
    else:
        pred = asy.concentration_window_sparse(args.n, float(args.p), args.delta, args.epsilon, args.unbounded)
    _emit(args, pred.to_dict())
    return EXIT_OK


def _output_dir(args) -> Path:
    if args.output_dir:
        return Path(args.output_dir)
    return Path(os.environ.get(OUTPUT_DIR_ENV, "."))


def cmd_experiment(args):
    from .rg.experiments import concentration_experiment, moment_experiment, write_csv, write_jsonl

    out = _output_dir(args)
    stem = f"{args.kind}_n{args.n}_d{args.delta}_s{args.seed}"
    if args.kind == "moment":
        _require(args, "k")
        records, summary = moment_experiment(args.n, args.k, args.p, args.delta, args.trials, args.seed,
                                             jobs=args.jobs, min_trials=args.min_trials)
        rows = [dict(s.to_dict(), n=args.n, k=args.k, p=str(args.p), delta=args.delta, trials=args.trials)
                for s in summary.values()]
        result = {"summary": rows}
    else:
        records, summary, pred = concentration_experiment(args.n, float(args.p), args.delta, args.trials,
                                                          args.seed, epsilon=args.epsilon, slack=args.slack,
                                                          jobs=args.jobs)
        rows = [summary.to_dict()]
        result = {"summary": rows[0], "prediction": pred.to_dict()}
    jsonl = write_jsonl(records, out / f"{stem}.jsonl", append=False)
    table = write_csv(rows, out / f"{stem}.csv")
    result["records_path"] = str(jsonl)
    result["summary_path"] = str(table)
    _emit(args, result)
    return EXIT_OK


def cmd_verify(args):
    from .verification import run_suite

    results = run_suite(args.suite)
    for r in results:
        print(r.line(), file=sys.stderr)
    ok = all(r.passed for r in results)
    _emit(args, {"passed": ok, "checks": [r.to_dict() for r in results]})
    return EXIT_OK if ok else EXIT_FAILED


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(json.dumps({"error": {"type": "usage", "message": message}}))
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="inducedforests", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("constants", help="alpha_delta and a_delta for delta = 3..delta-max")
    p.add_argument("--delta-max", type=int, default=10)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(handler=cmd_constants)

    p = sub.add_parser("count", help="exact counts as decimal strings")
    p.add_argument("kind", choices=("tree", "rooted-forest", "containing-tree", "containing-forest", "degree-sequence"))
    p.add_argument("--n", type=int)
    p.add_argument("--delta", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--h", type=int)
    p.add_argument("--shape", type=int_list, help="component sizes, e.g. 3,2,1")
    p.add_argument("--degrees", type=int_list, help="degree sequence d_1,...,d_n")
    p.set_defaults(handler=cmd_count)

    p = sub.add_parser("moment", help="exact expected number of induced trees (Y) or rooted forests (Z)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--p", type=rational, required=True)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--kind", choices=("Y", "Z"), default="Y")
    p.set_defaults(handler=cmd_moment)

    p = sub.add_parser("asymptotic", help="log of an asymptotic main term")
    p.add_argument("kind", choices=("tree", "weighted-forest", "probability-identity"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--w", type=rational)
    p.add_argument("--alpha", type=float)
    p.add_argument("--compare-exact", action="store_true")
    p.set_defaults(handler=cmd_asymptotic)

    p = sub.add_parser("window", help="predicted concentration window in G(n, p)")
    p.add_argument("regime", choices=("dense", "sparse"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=rational, required=True)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--epsilon", type=float, default=0.1)
    p.add_argument("--unbounded", action="store_true", help="use e in place of a_delta")
    p.set_defaults(handler=cmd_window)

    p = sub.add_parser("experiment", help="Monte Carlo experiments with JSONL records and a CSV summary")
    p.add_argument("kind", choices=("moment", "concentration"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=rational, required=True)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--min-trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--epsilon", type=float, default=0.1)
    p.add_argument("--slack", type=int, default=2)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--output-dir", help=f"defaults to ${OUTPUT_DIR_ENV} or the working directory")
    p.set_defaults(handler=cmd_experiment)

    p = sub.add_parser("verify", help="run the brute-force oracle suites")
    p.add_argument("suite", choices=("codecs", "counts", "asymptotics", "search", "all"))
    p.set_defaults(handler=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            return args.handler(args)
    except CapExceededError as exc:
        print(json.dumps({"error": {"type": "cap_exceeded", "message": str(exc)}}))
        return EXIT_CAP
    except UsageError as exc:
        print(json.dumps({"error": {"type": "usage", "message": str(exc)}}))
        return EXIT_USAGE
    except (ValueError, TypeError, ArithmeticError) as exc:
        print(json.dumps({"error": {"type": type(exc).__name__, "message": str(exc)}}))
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
