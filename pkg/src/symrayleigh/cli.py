"""Command-line interface.

Exit codes: 0 yes / success, 1 no / failure, 2 usage error, 3 resource limit.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from .errors import NoCertificateError, SizeLimitError, SpecError
from .models import LinePlusFreeSpec, UniformSpec, require_valid, spec_from_dict, spec_to_dict
from .selftest import run_selftest
from .soscert import (
    SOSCertificate,
    build_certificate,
    certificate_target,
    uniform_certificate,
    verify_certificate,
)
from .stability import is_strongly_rayleigh, negativity_witness, table_A

EXIT_YES, EXIT_NO, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3

FAMILY_FIELDS = {
    "uniform": ("r", "m"),
    "twoflats": ("r", "s", "t", "a", "b"),
    "line": ("r", "ell", "a"),
}


class UsageError(Exception):
    pass


def fmt_rational(x: Fraction) -> str:
    """Exact value plus a 6-place decimal, for human-readable output."""
    x = Fraction(x)
    exact = str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return f"{exact} ({float(x):.6f})"


def _add_spec_flags(p: argparse.ArgumentParser, default_family="line"):
    p.add_argument("--family", choices=sorted(FAMILY_FIELDS), default=default_family)
    for name in ("r", "s", "t", "a", "b", "m", "ell"):
        p.add_argument(f"--{name}", type=int)


def _spec_from_args(args):
    fields = FAMILY_FIELDS[args.family]
    missing = [f"--{k}" for k in fields if getattr(args, k) is None]
    if missing:
        raise UsageError(f"family {args.family!r} needs {', '.join(missing)}")
    stray = [f"--{k}" for k in ("r", "s", "t", "a", "b", "m", "ell") if k not in fields and getattr(args, k) is not None]
    if stray:
        raise UsageError(f"{', '.join(stray)} do not apply to family {args.family!r}")
    spec = spec_from_dict({"family": args.family, **{k: getattr(args, k) for k in fields}})
    require_valid(spec)
    return spec


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _spec_line(spec) -> str:
    return " ".join(f"{k}={v}" for k, v in spec_to_dict(spec).items())


# --- subcommands -----------------------------------------------------------

def cmd_check(args) -> int:
    spec = _spec_from_args(args)
    dec = is_strongly_rayleigh(spec)
    if args.format == "json":
        print(json.dumps({"spec": spec_to_dict(spec), **dec.to_json()}))
    else:
        print(_spec_line(spec))
        print(f"decision: {'strongly Rayleigh' if dec.decision else 'not strongly Rayleigh'}")
        print(f"path: {dec.path}")
        print(f"detail: {dec.detail}")
        if dec.threshold is not None:
            shown = "inf" if dec.threshold.infinite else fmt_rational(dec.threshold.value)
            print(f"threshold: A({spec.r},{spec.ell}) = {shown}")
    return EXIT_YES if dec.decision else EXIT_NO


def render_table(rmin: int, rmax: int, lmin: int, lmax: int, fmt: str) -> str:
    rs, ls = range(rmin, rmax + 1), range(lmin, lmax + 1)
    grid = table_A(rs, ls)
    cell = lambda v: "inf" if v is None else str(v)
    if fmt == "json":
        rows = {str(r): {str(l): cell(v) for l, v in zip(ls, row)} for r, row in zip(rs, grid)}
        return json.dumps({"rows": "r", "columns": "ell", "cells": rows}, indent=1) + "\n"
    if fmt == "text":
        width = 4
        lines = ["r\\l".rjust(width) + "".join(str(l).rjust(width) for l in ls)]
        lines += [str(r).rjust(width) + "".join(cell(v).rjust(width) for v in row) for r, row in zip(rs, grid)]
        return "\n".join(lines) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["r\\l"] + list(ls))
    for r, row in zip(rs, grid):
        w.writerow([r] + [cell(v) for v in row])
    return buf.getvalue()


def cmd_table(args) -> int:
    if not (3 <= args.rmin <= args.rmax and 1 <= args.lmin <= args.lmax):
        raise UsageError("need 3 <= rmin <= rmax and 1 <= lmin <= lmax")
    _emit(render_table(args.rmin, args.rmax, args.lmin, args.lmax, args.format), args.out)
    return EXIT_YES


def cmd_certify(args) -> int:
    spec = _spec_from_args(args)
    if isinstance(spec, LinePlusFreeSpec):
        try:
            cert = build_certificate(spec)
        except NoCertificateError as exc:
            print(str(exc), file=sys.stderr)
            return EXIT_NO
    elif isinstance(spec, UniformSpec):
        cert = uniform_certificate(spec)
    else:
        raise UsageError("certificates are produced for the line and uniform families only")
    if not verify_certificate(cert, certificate_target(spec)):
        print("internal error: certificate failed re-verification", file=sys.stderr)
        return EXIT_NO
    text = cert.dumps() + "\n"
    _emit(text, args.out)
    zero = sum(1 for w, _ in cert.summands if w == 0)
    print(f"certificate: {len(cert)} summands ({zero} with zero weight), verified", file=sys.stderr)
    return EXIT_YES


def cmd_verify(args) -> int:
    try:
        data = json.loads(Path(args.cert).read_text())
        spec = spec_from_dict(data["family"])
        cert = SOSCertificate.from_json(data)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        print(f"malformed certificate: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.r is not None:
        given = _spec_from_args(args)
        if given != spec:
            print(f"certificate is for {_spec_line(spec)}, not {_spec_line(given)}", file=sys.stderr)
            return EXIT_NO
    target = certificate_target(spec)
    if cert.ground != target.ground:
        print("certificate ground set does not match its family", file=sys.stderr)
        return EXIT_NO
    ok = verify_certificate(cert, target)
    print(f"{_spec_line(spec)}: certificate {'verified' if ok else 'FAILED'}")
    return EXIT_YES if ok else EXIT_NO


def cmd_witness(args) -> int:
    spec = _spec_from_args(args)
    if not isinstance(spec, LinePlusFreeSpec):
        raise UsageError("witness search is implemented for the line family")
    log: list[str] = []
    w = negativity_witness(spec, seed=args.seed, trials=args.trials, log=log)
    print(_spec_line(spec))
    for line in log:
        print(f"  {line}")
    if w is None:
        print("no witness found")
        return EXIT_NO
    print(f"witness ({w.stage}):")
    for h, v in w.point.items():
        print(f"  {h} = {fmt_rational(v)}")
    print(f"value: {fmt_rational(w.value)}")
    return EXIT_YES


def cmd_selftest(args) -> int:
    report = run_selftest(args.level)
    ok = all(item["passed"] for item in report)
    print(json.dumps({"level": args.level, "passed": ok, "suites": report}, indent=1))
    return EXIT_YES if ok else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="symrayleigh", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide the strong Rayleigh property")
    _add_spec_flags(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("table", help="grid of floor(A(r, ell))")
    p.add_argument("--rmin", type=int, default=3)
    p.add_argument("--rmax", type=int, default=12)
    p.add_argument("--lmin", type=int, default=1)
    p.add_argument("--lmax", type=int, default=12)
    p.add_argument("--format", choices=("csv", "json", "text"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("certify", help="build and write an exact SOS certificate")
    _add_spec_flags(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify", help="re-check a certificate file")
    p.add_argument("--cert", required=True)
    _add_spec_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("witness", help="search for a point where the Rayleigh difference is negative")
    _add_spec_flags(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=2000)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("selftest", help="run the brute-force oracle grids")
    p.add_argument("--level", choices=("quick", "full"), default="quick")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, SpecError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SizeLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
