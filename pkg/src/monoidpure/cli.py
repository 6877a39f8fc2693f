"""Command-line entry point: ``monoidpure <verb> FILE [options]``.

Exit status: 0 when every reported field is exact, 10 when some field is an
estimate or undecided, 1 on a hard error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from fractions import Fraction

from .errors import MonoidPureError
from .plot import render_svg
from .report import parse_monoid_file, run_report

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_ESTIMATE = 10

VERB_FIELDS = {
    "check": ("rank", "seminormal", "normal"),
    "vm": (),
    "mpt": ("mpt",),
    "face": ("pure_prime_face",),
    "ratio": ("ratio",),
    "report": None,
}


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {value}")
    return value


def _vector(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(part.strip()) for part in text.strip("()").split(","))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational vector: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="monoid description (JSON)")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--budget-m", type=_positive, dest="m_budget", help="largest m scanned to verify the pure prime face")
    common.add_argument("--budget-t", type=_positive, dest="t_budget", help="number of prime powers in limit traces")
    common.add_argument("--budget-hilbert", type=_positive, dest="hilbert_budget", help="candidate cap for Hilbert bases")
    common.add_argument("--budget-window", type=_positive, dest="window_bound", help="degree window for brute-force checks")
    common.add_argument("--no-timing", action="store_true", help="omit the timing block")

    parser = argparse.ArgumentParser(prog="monoidpure", description="Pure translations of affine monoids.")
    sub = parser.add_subparsers(dest="verb", required=True)
    sub.add_parser("check", parents=[common], help="validate the file; rank, seminormality, normality")
    p = sub.add_parser("vm", parents=[common], help="the set V_m")
    p.add_argument("--m", type=_positive, action="append", required=True, help="may be repeated")
    sub.add_parser("mpt", parents=[common], help="pure threshold")
    sub.add_parser("face", parents=[common], help="pure prime face and pure dimension")
    sub.add_parser("ratio", parents=[common], help="pure ratio and signature")
    p = sub.add_parser("report", parents=[common], help="every invariant")
    p.add_argument("--m", type=_positive, action="append", default=[], help="also list V_m (repeatable)")
    p = sub.add_parser("plot", parents=[common], help="SVG picture (ambient dimension 2)")
    p.add_argument("--m", type=_positive, help="highlight V_m")
    p.add_argument("--alpha", type=_vector, help="translation to draw, e.g. 3/2,3/2")
    return parser


def _write(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        mf = parse_monoid_file(args.file)
        overrides = {
            k: getattr(args, k)
            for k in ("m_budget", "t_budget", "hilbert_budget", "window_bound")
            if getattr(args, k) is not None
        }
        if overrides:
            mf = replace(mf, budgets=replace(mf.budgets, **overrides))
        if args.verb == "plot":
            _write(render_svg(mf.monoid(), args.m, args.alpha), args.out)
            return EXIT_OK
        ms = tuple(args.m or ()) if args.verb in ("vm", "report") else ()
        doc = run_report(mf, vm=ms, only=VERB_FIELDS[args.verb])
        _write(doc.to_json(include_timing=not args.no_timing), args.out)
    except (MonoidPureError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_OK if doc.all_exact() else EXIT_ESTIMATE


if __name__ == "__main__":
    sys.exit(main())
