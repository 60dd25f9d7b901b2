"""Command line front end.

Exit codes: 0 when every check passes, 1 when a congruence fails or the
prime is non-ordinary, 2 for malformed input or usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import doublecover as dcm
from . import ghost, stienstra
from .laurent import LaurentPoly, ParseError, from_json, parse
from .linalg import LabeledMatrix, NonUnitDeterminant
from .padic import is_prime
from .polytope import interior_points, newton_polytope
from .report import Report


class UsageError(Exception):
    pass


def matrix_json(M: LabeledMatrix) -> dict:
    return {
        "labels": [list(u) for u in M.labels],
        "prime": M.prime,
        "precision": M.precision,
        "entries": [[str(x) for x in r] for r in M.rows],
    }


def _matrix_text(M: LabeledMatrix) -> list[str]:
    width = max((len(str(x)) for r in M.rows for x in r), default=1)
    return ["  [" + ", ".join(str(x).rjust(width) for x in r) + "]" for r in M.rows]


def _charpoly_text(cs) -> str:
    d = len(cs) - 1
    parts = []
    for i, c in enumerate(cs):
        e = d - i
        if c == 0 and e != d:
            continue
        mono = "" if e == 0 else ("T" if e == 1 else f"T^{e}")
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts)


def load_poly(args) -> LaurentPoly:
    if args.poly_file:
        try:
            data = json.loads(Path(args.poly_file).read_text())
            poly = from_json(data)
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"cannot read polynomial file: {exc}") from exc
        if args.vars and tuple(args.vars.split(",")) != poly.variables:
            raise UsageError("--vars does not match the variables in the polynomial file")
        return poly
    if not args.vars:
        raise UsageError("--vars is required with --poly")
    variables = [v.strip() for v in args.vars.split(",")]
    try:
        return parse(args.poly, variables)
    except ParseError as exc:
        raise UsageError(f"parse error: {exc}\n  {args.poly}\n  {' ' * exc.position}^") from exc


def _prime(args) -> int:
    if args.prime is None:
        raise UsageError("--prime is required")
    if not is_prime(args.prime):
        raise UsageError(f"{args.prime} is not prime")
    return args.prime


def _precision(args) -> int:
    if args.precision < 1:
        raise UsageError("--precision must be at least 1")
    return args.precision


def _context(args):
    poly = load_poly(args)
    p = _prime(args)
    try:
        return stienstra.make_context(poly, p)
    except stienstra.EmptyInterior as exc:
        raise UsageError(str(exc)) from exc


def _report_result(rep: Report, extra: dict | None = None):
    data = {**(extra or {}), **rep.to_json()}
    text = [f"# {rep.title}", *rep.lines()]
    return data, text, 0 if rep.passed else 1


def cmd_interior_points(args):
    poly = load_poly(args)
    if poly.is_zero():
        raise UsageError("the zero polynomial has no Newton polytope")
    J = interior_points(newton_polytope(poly))
    if not J:
        print("warning: no interior points", file=sys.stderr)
    data = {"variables": list(poly.variables), "interior_points": [list(u) for u in J], "h": len(J)}
    text = [f"h = {len(J)}", *(str(tuple(u)) for u in J)]
    return data, text, 0


def cmd_limit(args):
    ctx = _context(args)
    k = _precision(args)
    lim = stienstra.limit_alpha(ctx, k, args.side, guard=args.guard_digits)
    cp = lim.charpoly()
    tr, dt = lim.trace_digits(), lim.det_digits()
    data = {
        "side": lim.side,
        "matrix": matrix_json(lim.matrix),
        "charpoly": [str(c) for c in cp],
        "trace": tr.render(),
        "det": dt.render(),
    }
    text = [
        f"limit matrix ({lim.side}) mod {ctx.prime}^{k}, labels {list(ctx.labels)}:",
        *_matrix_text(lim.matrix),
        f"charpoly: {_charpoly_text(cp)}  (mod {ctx.prime}^{k})",
        f"trace: {tr.render()}",
        f"det: {dt.render()}",
    ]
    return data, text, 0


def cmd_verify(args):
    ctx = _context(args)
    S = args.max_s
    if S < 1:
        raise UsageError("--max-s must be at least 1")
    rep = Report(f"congruences of alpha_s at p={ctx.prime}")
    rep.extend(stienstra.check_theorem1_i(ctx, S))
    rep.extend(stienstra.check_det_power(ctx, S))
    rep.extend(stienstra.check_theorem1_ii(ctx, S))
    return _report_result(rep, {"labels": [list(u) for u in ctx.labels]})


def cmd_ghost_verify(args):
    poly = load_poly(args)
    p = _prime(args)
    if poly.is_zero():
        raise UsageError("the zero polynomial has no Newton polytope")
    rep = ghost.check_ghost_suite(poly, p, args.max_n)
    try:
        ctx = stienstra.make_context(poly, p)
    except stienstra.EmptyInterior:
        rep.add("gamma transform", None, reason="no interior points")
    else:
        rep.extend(ghost.check_gamma(ctx, args.max_s))
    return _report_result(rep)


def cmd_double_cover(args):
    poly = load_poly(args)
    p = _prime(args)
    k = _precision(args)
    w = args.cover_var or poly.variables[-1]
    if w not in poly.variables:
        raise UsageError(f"unknown cover variable {w!r}")
    try:
        dc = dcm.split_double_cover(poly, poly.variables.index(w))
    except (dcm.NotDoubleCover, stienstra.EmptyInterior, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    rep = Report(f"double cover at p={p}")
    lim = dcm.limit_via_delta(dc, p, k)
    data = {"labels": [list(u) for u in dc.labels], "limit": matrix_json(lim.matrix)}
    text = [f"limit via delta mod {p}^{k}:", *_matrix_text(lim.matrix)]
    if p > 2:
        rep.extend(dcm.b_ratio_check(p, k))
    if args.frobpoly:
        try:
            frob = dcm.FrobeniusPolyInput.parse(args.frobpoly, p, dc.h)
        except ValueError as exc:
            raise UsageError(f"bad --frobpoly: {exc}") from exc
        rep.extend(dcm.corollary_check(lim, frob))
        for n in _int_list(args.asd_n):
            rep.extend(dcm.asd_check(dc, frob, n))
    elif args.asd_n:
        raise UsageError("--asd-n needs --frobpoly")
    d, t, code = _report_result(rep, data)
    return d, text + t, code


def cmd_log_coeffs(args):
    ctx = _context(args)
    if args.terms < 1:
        raise UsageError("--terms must be at least 1")
    mats = stienstra.formal_group_log_coeffs(ctx, args.terms)
    data = {
        "labels": [list(u) for u in ctx.labels],
        "coefficients": [
            {"m": m, "entries": [[str(Fraction(x)) for x in r] for r in M.rows]}
            for m, M in enumerate(mats, start=1)
        ],
    }
    text = []
    for m, M in enumerate(mats, start=1):
        text.append(f"m = {m}: beta_{m - 1} / {m}")
        text.extend("  [" + ", ".join(str(Fraction(x)) for x in r) + "]" for r in M.rows)
    return data, text, 0


def _int_list(text: str | None) -> list[int]:
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"bad integer list {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group(required=True)
    src.add_argument("--poly", help="polynomial expression, e.g. 'y^2 - x^5 - 1'")
    src.add_argument("--poly-file", help="polynomial in canonical JSON form")
    common.add_argument("--vars", help="comma separated variable order")
    common.add_argument("--prime", type=int)
    common.add_argument("--precision", type=int, default=1)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--threads", type=int, default=1, help="accepted for compatibility; output never depends on it")

    parser = argparse.ArgumentParser(prog="unitroot", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("interior-points", parents=[common], help="list interior lattice points J")
    p.set_defaults(func=cmd_interior_points)

    p = sub.add_parser("limit", parents=[common], help="p-adic limit matrix and its charpoly")
    p.add_argument("--side", choices=["left", "right"], default="right")
    p.add_argument("--guard-digits", type=int, default=0)
    p.set_defaults(func=cmd_limit)

    p = sub.add_parser("verify", parents=[common], help="congruences between alpha_s matrices")
    p.add_argument("--max-s", type=int, default=3)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("ghost-verify", parents=[common], help="ghost term and I-polynomial checks")
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--max-s", type=int, default=2)
    p.set_defaults(func=cmd_ghost_verify)

    p = sub.add_parser("double-cover", parents=[common], help="W^2 = G checks")
    p.add_argument("--frobpoly", help="constant-first coefficients of 1 + a_1 T + ... + a_k T^k")
    p.add_argument("--cover-var", help="name of W (default: last variable)")
    p.add_argument("--asd-n", help="comma separated n for the ASD congruence")
    p.set_defaults(func=cmd_double_cover)

    p = sub.add_parser("log-coeffs", parents=[common], help="formal group logarithm coefficients")
    p.add_argument("--terms", type=int, default=5)
    p.set_defaults(func=cmd_log_coeffs)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.threads is not None and args.threads < 1:
            raise UsageError("--threads must be positive")
        data, text, code = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NonUnitDeterminant as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.format == "json":
        print(json.dumps(data, indent=2))
    else:
        print("\n".join(text))
    return code


if __name__ == "__main__":
    sys.exit(main())
