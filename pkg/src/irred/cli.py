"""Command line entry point.

Exit codes: 0 success; 2 configuration problems; 3 mathematical
verification failures (field, units, degenerate bounds, unusable primes);
4 size-cap violations; 5 a partial sweep under --strict (report still
emitted).
"""

import argparse
import sys

from .config import parse_config
from .errors import (
    BadReductionError,
    ConfigError,
    DegeneracyError,
    EmptySweepError,
    InvalidInputError,
    SizeCapError,
    UnsupportedPrimeError,
    VerificationError,
)
from .pipeline import run_pipeline
from .report import emit_report

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_VERIFICATION = 3
EXIT_SIZE_CAP = 4
EXIT_PARTIAL = 5

_CONFIG_ERRORS = (ConfigError, InvalidInputError)
_MATH_ERRORS = (
    VerificationError,
    DegeneracyError,
    UnsupportedPrimeError,
    BadReductionError,
    EmptySweepError,
)


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="irred",
        description="Explicit bad-prime sets for mod-p irreducibility of "
                    "elliptic curves over totally real Galois fields.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run the pipeline described by a config file")
    run.add_argument("--config", required=True, help="path to the JSON configuration")
    run.add_argument("--out", help="write the report here instead of stdout")
    run.add_argument("--format", choices=("json", "text"), default="json")
    run.add_argument("--jobs", type=_positive_int, default=1,
                     help="worker processes for family sweeps")
    run.add_argument("--emit-pairs", action="store_true",
                     help="include per-pair sweep tables in the report")
    run.add_argument("--strict", action="store_true",
                     help="exit 5 when any sweep was partial")
    run.add_argument("--bound-only", action="store_true",
                     help="stop after the unit bound; skip curve criteria")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with open(args.config, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        print(f"error: cannot read config: {e}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        cfg = parse_config(text)
        report = run_pipeline(
            cfg,
            jobs=args.jobs,
            bound_only=args.bound_only,
            emit_pairs=args.emit_pairs,
        )
    except _CONFIG_ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except SizeCapError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_SIZE_CAP
    except _MATH_ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VERIFICATION

    payload = emit_report(report, format=args.format)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(payload)
    else:
        buffer = getattr(sys.stdout, "buffer", None)
        if buffer is not None:
            buffer.write(payload)
            buffer.flush()
        else:
            sys.stdout.write(payload.decode("utf-8"))

    if args.strict and report.partial:
        print("warning: sweep was partial (bad-reduction pairs skipped)",
              file=sys.stderr)
        return EXIT_PARTIAL
    return EXIT_OK
