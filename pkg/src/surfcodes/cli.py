"""Command-line interface: ``surfcodes <subcommand> ...``.

Exit status: 0 success (and, for ``experiment``, all bounds sound),
2 soundness violation, 1 operational error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bounds import BETA_MODES, evaluate_all
from .codes import (
    DEFAULT_BUDGET,
    build_code,
    format_matrix,
    min_distance,
    min_distance_bz,
    min_distance_exhaustive,
    parse_matrix,
)
from .errors import SurfcodesError
from .experiment import ExperimentConfig, emit, run_experiment, sound
from .gf import field_from_q, parse_field_header
from .invariants import SurfaceInvariants
from .projective import (
    SurfaceP3,
    check_smoothness,
    format_points,
    parse_polynomial,
    parse_polynomial_expr,
    rational_points,
)


def _field(text: str):
    return field_from_q(int(text)) if text.isdigit() else parse_field_header(text)


def _polynomial(args):
    if args.expr:
        if not args.field:
            raise SurfcodesError("--expr needs --field")
        return parse_polynomial_expr(_field(args.field), args.expr, args.nvars)
    if not args.file:
        raise SurfcodesError("give a polynomial file or --expr")
    return parse_polynomial(Path(args.file).read_text())


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_field(args) -> int:
    F = _field(args.q) if args.modulus is None else parse_field_header(f"GF({args.q};{args.modulus})")
    print(F.header)
    print(f"characteristic {F.p}, degree {F.e}, primitive element {F.code_text(F.primitive)}")
    if args.elements:
        for c in range(F.q):
            log = "-" if c == 0 else str(int(F._log[c]))
            print(f"{c}\t{F.code_text(c)}\tlog={log}")
    if args.mul_table:
        T = F.mul_table()
        for row in T.tolist():
            print(" ".join(str(x) for x in row))
    return 0


def cmd_points(args) -> int:
    f = _polynomial(args)
    pts = rational_points(f)
    if args.affine:
        pts = [P for P in pts if P.coords[0]]
    if args.count:
        print(len(pts))
    else:
        _write(format_points(pts), args.out)
    return 0


def cmd_smooth_check(args) -> int:
    f = _polynomial(args)
    print(check_smoothness(f, args.max_ext))
    return 0


def cmd_build_code(args) -> int:
    f = _polynomial(args)
    X = SurfaceP3(f)
    C = build_code(X, args.r, multiple=args.multiple)
    _write(format_matrix(C), args.out)
    info = f"n={C.n} k={C.k} dim_L={C.provenance['dim_L']} injective={C.provenance['injective']}"
    print(info, file=sys.stderr)
    return 0


def cmd_mindist(args) -> int:
    C = parse_matrix(Path(args.file).read_text())
    if args.method == "exhaustive":
        d, how = min_distance_exhaustive(C, args.budget, args.workers), "exhaustive"
    elif args.method == "bz":
        d, how = min_distance_bz(C, budget=args.budget), "bz"
    else:
        d, how = min_distance(C, args.budget, args.workers)
    print(f"n={C.n} k={C.k} d={d} method={how}")
    return 0


def _json_default(o):
    if isinstance(o, Fraction):
        return str(o)
    raise TypeError(f"not serialisable: {type(o).__name__}")


def cmd_bounds(args) -> int:
    inv = SurfaceInvariants.from_json(Path(args.file).read_text())
    reports = evaluate_all(inv, args.r, p_a=args.p_a, beta_modes=args.beta_modes or BETA_MODES)
    if args.format == "json":
        print(json.dumps([b.to_dict() for b in reports], indent=2, default=_json_default))
        return 0
    width = max(len(b.key) for b in reports)
    for b in reports:
        if b.applicable:
            flag = " (clamped)" if b.degenerate else ""
            branch = f"  [{b.branch}]" if b.branch else ""
            print(f"{b.key:<{width}}  {b.value:>8}{flag}{branch}")
        else:
            print(f"{b.key:<{width}}  {'-':>8}  {b.reason}")
    return 0


def cmd_experiment(args) -> int:
    cfg = ExperimentConfig.from_json(Path(args.config).read_text()) if args.config else ExperimentConfig()
    overrides = {"seed": args.seed, "budget": args.budget, "max_ext": args.max_ext, "format": args.format}
    data = json.loads(cfg.to_json())
    data.update({k: v for k, v in overrides.items() if v is not None})
    cfg = ExperimentConfig(**data)
    records = run_experiment(cfg)
    _write(emit(records, cfg.format), args.out)
    bad = [v for rec in records for v in rec.violations]
    for v in bad:
        print(f"violation: {v}", file=sys.stderr)
    return 0 if sound(records) else 2


def _add_poly_args(p) -> None:
    p.add_argument("file", nargs="?", help="polynomial file")
    p.add_argument("--expr", help="polynomial expression, e.g. 'x0^3 + x1^3 + x2^3 + x3^3'")
    p.add_argument("--field", help="q or GF(q;modulus), used with --expr")
    p.add_argument("--nvars", type=int, default=4)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="surfcodes", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field", help="describe a finite field")
    p.add_argument("q")
    p.add_argument("--modulus", help="irreducible modulus in t, e.g. 't^2+t+1'")
    p.add_argument("--elements", action="store_true", help="list elements with discrete logs")
    p.add_argument("--mul-table", action="store_true")
    p.set_defaults(func=cmd_field)

    p = sub.add_parser("points", help="rational points of a projective hypersurface")
    _add_poly_args(p)
    p.add_argument("--count", action="store_true")
    p.add_argument("--affine", action="store_true", help="only points with x0 != 0")
    p.add_argument("--out")
    p.set_defaults(func=cmd_points)

    p = sub.add_parser("smooth-check", help="Jacobian search for singular points")
    _add_poly_args(p)
    p.add_argument("--max-ext", type=int, default=2)
    p.set_defaults(func=cmd_smooth_check)

    p = sub.add_parser("build-code", help="generator matrix of C(X, rL, S)")
    _add_poly_args(p)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--multiple", type=int, default=1, help="H = a·L")
    p.add_argument("--out")
    p.set_defaults(func=cmd_build_code)

    p = sub.add_parser("mindist", help="exact minimum distance of a code in matrix text format")
    p.add_argument("file")
    p.add_argument("--method", choices=["auto", "exhaustive", "bz"], default="auto")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_mindist)

    p = sub.add_parser("bounds", help="evaluate every bound on a SurfaceInvariants JSON block")
    p.add_argument("file")
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--p-a", type=int, default=None, help="arithmetic genus p_a(X)")
    p.add_argument("--beta-modes", nargs="*", choices=BETA_MODES)
    p.add_argument("--format", choices=["json", "text"], default="text")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("experiment", help="run a sweep and report")
    p.add_argument("--config")
    p.add_argument("--seed", type=int)
    p.add_argument("--budget", type=int)
    p.add_argument("--max-ext", type=int)
    p.add_argument("--format", choices=["csv", "json", "markdown"])
    p.add_argument("--out")
    p.set_defaults(func=cmd_experiment)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SurfcodesError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
