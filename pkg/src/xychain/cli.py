"""Command-line front-end.

Exit codes: 0 success, 1 usage error, 2 validation failure, 3 numerical failure.
"""

import argparse
import sys
from pathlib import Path

from . import __version__
from .exceptions import NumericalError
from .spectrum import ChainSpec
from .sweep import (
    ENGINES,
    MODES,
    SweepRequest,
    cmd_concurrence,
    cmd_sweep,
    figure_curves,
    write_csv,
)

EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, EXIT_NUMERICAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_pair(text):
    try:
        i, j = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'i,j', got {text!r}")
    return (i, j)


def parse_range(text):
    parts = text.split(":")
    if len(parts) not in (3, 4) or (len(parts) == 4 and parts[3] not in ("log", "lin")):
        raise argparse.ArgumentTypeError(f"expected start:stop:count[:log], got {text!r}")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad numbers in range {text!r}")
    return (start, stop, count, len(parts) == 4 and parts[3] == "log")


def _chain_args(p, tau_default=0.0):
    p.add_argument("--n", type=int, required=True, help="number of spins")
    p.add_argument("--delta", type=float, default=1.0, help="coupling ratio D2/D1")
    p.add_argument("--tau", type=float, default=tau_default, help="beta*D1/2")
    p.add_argument("--omega1", type=float, default=0.0, help="Larmor frequency, odd sites")
    p.add_argument("--omega2", type=float, default=0.0, help="Larmor frequency, even sites")
    p.add_argument("--engine", choices=ENGINES, default="auto")
    p.add_argument("--out", type=Path, help="output file (default stdout)")


def build_parser():
    parser = _Parser(prog="xychain", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("concurrence", help="concurrence of one spin pair")
    _chain_args(p)
    p.add_argument("--pair", type=parse_pair, required=True, metavar="I,J")

    p = sub.add_parser("sweep", help="one-parameter sweep to CSV")
    _chain_args(p)
    p.add_argument("--vary", choices=MODES, required=True)
    p.add_argument("--range", type=parse_range, metavar="START:STOP:COUNT[:log]")
    p.add_argument("--pair", action="append", metavar="I,J|nn",
                   help="pair to evaluate, repeatable; 'nn' for every bond (default)")

    p = sub.add_parser("figure", help="write the preset data behind a figure")
    p.add_argument("id", type=int, choices=range(1, 7))
    p.add_argument("--out", type=Path, default=Path("."), help="output directory")

    p = sub.add_parser("validate", help="run the oracle cross-check suites")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--size", choices=("small", "full"), default="small")
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    return parser


def _spec(args):
    return ChainSpec(args.n, args.omega1, args.omega2, args.delta, args.tau)


def _metadata(argv):
    return [f"command: xychain {' '.join(argv)}"]


def _emit(records, out, metadata):
    if out is None:
        write_csv(records, sys.stdout, metadata)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            write_csv(records, fh, metadata)


def _pairs(values):
    if not values or values == ["nn"]:
        return "nn"
    if "nn" in values:
        raise UsageError("'nn' cannot be combined with explicit pairs")
    try:
        return tuple(parse_pair(v) for v in values)
    except argparse.ArgumentTypeError as exc:
        raise UsageError(str(exc))


def run(args, argv):
    if args.command == "concurrence":
        i, j = args.pair
        rec = cmd_concurrence(_spec(args), i, j, args.engine)
        _emit([rec], args.out, _metadata(argv))
    elif args.command == "sweep":
        req = SweepRequest(args.vary, _spec(args), args.range, _pairs(args.pair), args.engine)
        _emit(cmd_sweep(req), args.out, _metadata(argv))
    elif args.command == "figure":
        args.out.mkdir(parents=True, exist_ok=True)
        for curve in figure_curves(args.id):
            path = args.out / f"{curve.name}.csv"
            meta = [f"figure {args.id}, curve {curve.name}",
                    "zero Larmor frequencies"] + [f"assumption: {n}" for n in curve.notes]
            with open(path, "w", encoding="utf-8", newline="") as fh:
                write_csv(cmd_sweep(curve.request), fh, meta)
            print(path)
    elif args.command == "validate":
        from .validate import run_all

        results = run_all(args.seed, args.size, inject_fault=args.inject_fault)
        for r in results:
            print(r.line())
        if not all(r.passed for r in results):
            return EXIT_VALIDATION
    return EXIT_OK


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    try:
        return run(args, argv)
    except NumericalError as exc:
        print(f"xychain: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (UsageError, ValueError) as exc:
        print(f"xychain: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
