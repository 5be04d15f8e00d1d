"""Command-line entry point: ``gapcorr <subcommand> ...``.

Exit codes: 0 success, 1 runtime failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import gaps as gapmod
from .experiments import (ExperimentConfig, convergence_report, limit_nonexistence_probe,
                          parse_alpha)
from .generators import Kronecker, RootSequence, UniformRandom, VanDerCorput, generate
from .paircorr import pair_correlation_curve
from .torus import format_points, read_points


class UsageError(Exception):
    pass


def parse_grid(text: str) -> list:
    """``start:stop:step`` -> floats; stop is included when it lands on the lattice."""
    try:
        start, stop, step = (float(p) for p in text.split(":"))
    except ValueError:
        raise UsageError(f"grid must look like start:stop:step, got {text!r}") from None
    if not (step > 0 and stop >= start and math.isfinite(stop)):
        raise UsageError(f"bad grid {text!r}")
    span = (stop - start) / step
    count = round(span) if abs(span - round(span)) <= 1e-9 else math.floor(span)
    # start + i*step, rounded to hide representation noise like 0.30000000000000004
    return [round(start + i * step, 12) for i in range(count + 1)]


def parse_n_values(text: str) -> list:
    try:
        vals = [int(float(v)) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"bad --n-values {text!r}") from None
    if not vals:
        raise UsageError("--n-values is empty")
    return vals


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def _add_family(p, need_n=True):
    p.add_argument("--family", choices=["kronecker", "vdc", "root", "random"])
    p.add_argument("--alpha", help="decimal, or 'golden' / 'sqrt2m1'")
    p.add_argument("--base", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    if need_n:
        p.add_argument("--n", type=int)


def _spec(args):
    fam = args.family
    if fam is None:
        raise UsageError("one of --in or --family is required")
    if fam == "kronecker":
        if args.alpha is None:
            raise UsageError("--family kronecker needs --alpha")
        try:
            return Kronecker(parse_alpha(args.alpha))
        except ValueError as e:
            raise UsageError(f"bad --alpha: {e}") from None
    if fam == "vdc":
        if args.base < 2:
            raise UsageError("--base must be >= 2")
        return VanDerCorput(args.base)
    if fam == "root":
        return RootSequence()
    return UniformRandom(args.seed)


def _points(args):
    if getattr(args, "inp", None):
        if args.family:
            raise UsageError("--in and --family are mutually exclusive")
        return read_points(args.inp)
    spec = _spec(args)
    if not args.n or args.n < 1:
        raise UsageError("--n must be a positive integer")
    return generate(spec, args.n)


def _emit(text: str, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# -- subcommands -------------------------------------------------------------


def cmd_generate(args):
    _emit(format_points(_points(args)), args.out)


def cmd_paircorr(args):
    curve = pair_correlation_curve(_points(args), parse_grid(args.s_grid))
    _emit(curve.to_csv() if args.format == "csv" else curve.to_json() + "\n", args.out)


def cmd_gaps(args):
    pts = _points(args)
    sp = gapmod.gap_spectrum(pts, args.tol)
    if args.format == "csv":
        lines = ["d,count"] + [f"{d:.17g},{c}" for d, c in zip(sp.gaps, sp.counts)]
        _emit("\n".join(lines) + "\n", args.out)
    else:
        d = sp.to_dict()
        d["label"] = pts.label
        _emit(_json(d), args.out)


def cmd_classify(args):
    traj = gapmod.classify_gaps(_spec(args), parse_n_values(args.n_values),
                                args.tol, args.large_threshold)
    _emit(traj.to_csv() if args.format == "csv" else _json(traj.to_dict()), args.out)


def cmd_batches(args):
    _emit(_json(gapmod.batch_decomposition(_points(args)).to_dict()), args.out)


def cmd_report(args):
    try:
        cfg = ExperimentConfig.load(args.config)
    except (KeyError, TypeError) as e:
        raise UsageError(f"bad config {args.config}: {e}") from None
    report = convergence_report(cfg)
    prefix = args.out or cfg.output
    if prefix:
        report.write(prefix)
    if args.format == "csv":
        sys.stdout.write(report.to_csv())
    else:
        sys.stdout.write(report.to_json() + "\n")


def cmd_probe(args):
    rows = limit_nonexistence_probe(_spec(args), args.s, parse_n_values(args.n_values))
    lines = ["N,R_over_N"] + [f"{n},{v:.17g}" for n, v in rows]
    _emit("\n".join(lines) + "\n", args.out)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gapcorr", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("generate", help="write the first n points of a sequence")
    _add_family(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("paircorr", help="R(s,N)/N on a grid of s")
    p.add_argument("--in", dest="inp")
    _add_family(p)
    p.add_argument("--s-grid", default="0.1:5.0:0.1")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_paircorr)

    p = sub.add_parser("gaps", help="circular gap spectrum")
    p.add_argument("--in", dest="inp")
    _add_family(p)
    p.add_argument("--tol", type=float, default=gapmod.DEFAULT_TOL)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gaps)

    p = sub.add_parser("classify", help="label gap families across N")
    _add_family(p, need_n=False)
    p.add_argument("--n-values", required=True)
    p.add_argument("--tol", type=float, default=gapmod.DEFAULT_TOL)
    p.add_argument("--large-threshold", type=float, default=gapmod.DEFAULT_LARGE_THRESHOLD)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("batches", help="groups of coinciding points")
    p.add_argument("--in", dest="inp")
    _add_family(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_batches)

    p = sub.add_parser("report", help="run an experiment config (JSON)")
    p.add_argument("--config", required=True)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out", help="path prefix for report files")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("probe", help="R(s,N)/N at fixed s along n-values")
    _add_family(p, need_n=False)
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--n-values", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_probe)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        args.func(args)
    except UsageError as e:
        print(f"gapcorr {args.command}: {e}", file=sys.stderr)
        return 2
    except (OSError, ValueError, TypeError) as e:
        print(f"gapcorr {args.command}: {e}", file=sys.stderr)
        return 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
