"""polysep command line: gen, roots, analyze, reciprocal, mignotte, scan, verify.

Data goes to stdout as JSON or CSV; diagnostics go to stderr. Exit codes:
0 ok, 1 failed verification, 2 bad flags, 3 below threshold, 4 no convergence.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys

from .errors import ConvergenceError, ParameterError, ThresholdError
from .family import build, mignotte_family
from .rootfind import adaptive_roots
from .sep import CSV_COLUMNS, analyze, analyze_reciprocal, geometric_sweep, scan
from .verify import run_invariants

EXIT_FLAGS, EXIT_THRESHOLD, EXIT_CONVERGENCE = 2, 3, 4


def _da(p: argparse.ArgumentParser) -> None:
    p.add_argument("-d", type=int, required=True, help="degree (>= 3)")
    p.add_argument("-a", type=int, required=True, help="family parameter (>= 1)")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polysep", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    _da(sub.add_parser("gen", help="construct P_{d,a} with its close-pair prediction"))

    p = sub.add_parser("roots", help="all complex roots of P_{d,a}")
    _da(p)
    p.add_argument("--prec", type=int, help="starting precision in bits")

    p = sub.add_parser("analyze", help="separation report for P_{d,a}")
    _da(p)
    p.add_argument("--json", action="store_true", help="JSON instead of key=value lines")

    p = sub.add_parser("reciprocal", help="separation report for the monic reciprocal")
    _da(p)

    _da(sub.add_parser("mignotte", help="x^d - 2(ax-1)^2"))

    p = sub.add_parser("scan", help="geometric sweep over a, CSV output")
    p.add_argument("-d", type=int, required=True)
    p.add_argument("--a-from", type=int, required=True)
    p.add_argument("--a-to", type=int, required=True)
    p.add_argument("--a-factor", type=float, required=True)
    p.add_argument("--family", choices=["main", "mignotte", "reciprocal"], default="main")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--no-timing", action="store_true", help="leave elapsed_ms empty")
    p.add_argument("--out", help="write CSV here instead of stdout")

    p = sub.add_parser("verify", help="run the invariant suite")
    p.add_argument("--d-max", type=int, default=6)
    p.add_argument("--a-max", type=int, default=20)
    return parser


def _dump(obj, out) -> None:
    json.dump(obj, out, indent=2)
    out.write("\n")


def _validate(args, parser) -> None:
    if hasattr(args, "d") and args.d is not None and args.d < 3:
        parser.error("-d must be at least 3")
    if hasattr(args, "a") and args.a is not None and args.a < 1:
        parser.error("-a must be at least 1")
    if args.command == "scan":
        if args.a_from < 1 or args.a_to < args.a_from:
            parser.error("need 1 <= --a-from <= --a-to")
        if args.a_factor <= 1:
            parser.error("--a-factor must exceed 1")
        if args.jobs < 1:
            parser.error("--jobs must be positive")
    if args.command == "roots" and args.prec is not None and args.prec < 32:
        parser.error("--prec must be at least 32")
    if args.command == "verify" and (args.d_max < 3 or args.a_max < 1):
        parser.error("need --d-max >= 3 and --a-max >= 1")


def _execute(args, out) -> int:
    if args.command == "gen":
        _dump(build(args.d, args.a).to_json(), out)
    elif args.command == "roots":
        inst = build(args.d, args.a)
        rs = adaptive_roots(inst.poly, inst.prediction.sep_pred, args.prec)
        _dump(rs.to_json(), out)
    elif args.command == "analyze":
        rep = analyze(build(args.d, args.a)).to_json()
        if args.json:
            _dump(rep, out)
        else:
            for k, v in rep.items():
                out.write(f"{k}={json.dumps(v)}\n")
    elif args.command == "reciprocal":
        _dump(analyze_reciprocal(build(args.d, args.a)).to_json(), out)
    elif args.command == "mignotte":
        _dump(mignotte_family(args.d, args.a).to_json(), out)
    elif args.command == "scan":
        a_values = geometric_sweep(args.a_from, args.a_to, args.a_factor)
        rows = scan(args.d, a_values, family=args.family, jobs=args.jobs, timing=not args.no_timing)
        if args.out:
            with open(args.out, "w", newline="") as fh:
                _write_csv(rows, fh)
        else:
            _write_csv(rows, out)
    elif args.command == "verify":
        results = run_invariants(args.d_max, args.a_max)
        for r in results:
            out.write(r.line() + "\n")
        ok = all(r.passed for r in results)
        out.write(f"{'ALL PASS' if ok else 'FAILURES'}: {sum(r.passed for r in results)}/{len(results)} checks\n")
        return 0 if ok else 1
    return 0


def _write_csv(rows, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow(r.csv_fields())


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = make_parser()
    args = parser.parse_args(argv)
    _validate(args, parser)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
    try:
        return _execute(args, out)
    except ThresholdError as exc:
        print(f"threshold error: {exc}", file=sys.stderr)
        return EXIT_THRESHOLD
    except ConvergenceError as exc:
        print(f"no convergence: {exc} {exc.diagnostics}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except ParameterError as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return EXIT_FLAGS


if __name__ == "__main__":
    sys.exit(main())
