"""Command-line entry point: every operation reads and writes canonical JSON.

Exit codes: 0 success, 1 a verified example failed, 2 invalid input,
3 inconclusive verdict, 4 internal consistency failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Optional, Sequence

from . import io
from .configuration import Configuration, analyze, classify_stable_rational
from .io import DocumentError, dumps, qstr
from .lattice import IntMatrix, kernel_basis
from .poly import RationalFunction, SparsePoly
from .ratio1d import FactorialRatioSpec, classify_univariate, is_integral, landau_profile
from .residue import (
    ResidueSpec,
    UniPoly,
    residue_at_infinity,
    residue_at_zero,
    spec_from_configuration,
    sylvester_resultant,
    toric_residue_r1,
)
from .series2d import (
    QUADRANT,
    Cone,
    GaleArrangement,
    InsufficientTruncation,
    ThetaOperator,
    apply_theta,
    chambers,
    diagonal,
    dilate_restrict,
    euler_jacobi,
    expand_rational,
    horn_rationality,
    horn_series,
    minimal_cells,
    reconstruct_auto,
    reconstruct_rational,
)

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_INCONCLUSIVE, EXIT_INTERNAL = 0, 1, 2, 3, 4

_TAGS = {
    "Pyramid": "pyramid",
    "Lawrence": "lawrence",
    "CayleyEssential": "cayley-essential",
    "NoStableRational": "no-stable-rational",
    "RationalLawrence": "rational-lawrence",
    "RationalCayley": "rational-cayley",
    "NotRational": "not-rational",
    "Inconclusive": "inconclusive",
}


# -- input helpers ---------------------------------------------------------------

def _json_arg(value: str) -> Any:
    """Inline JSON if the argument looks like JSON, otherwise a path ('-' is stdin)."""
    text = value.strip()
    if text[:1] in "[{":
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"malformed inline JSON ({exc.msg})") from None
    return io.load(value)


def _matrix(value: str) -> IntMatrix:
    return io.matrix_from_json(_json_arg(value))


def _series(value: str):
    return io.series_from_json(_json_arg(value))


def _ints(xs: Optional[Sequence[str]]) -> list[int]:
    return [io._int(x) for x in (xs or [])]


def _strs(xs) -> list[str]:
    return [str(x) for x in xs]


def _qvec(v) -> list[str]:
    return [qstr(x) for x in v]


def _gale_and_offsets(args) -> GaleArrangement:
    if args.gale is not None:
        B = _matrix(args.gale)
    elif args.matrix is not None:
        B = kernel_basis(_matrix(args.matrix))
    else:
        raise DocumentError("need --gale or --matrix")
    if B.cols != 2:
        raise DocumentError(f"need a rank-2 Gale dual, got {B.cols} columns")
    v = _ints(args.v) if args.v else [0] * B.rows
    if len(v) != B.rows:
        raise DocumentError(f"need {B.rows} offsets, got {len(v)}")
    return GaleArrangement.from_matrix(B, v)


def _cone(args) -> Cone:
    if args.rays is None:
        if args.shift is not None:
            raise DocumentError("--shift needs --rays")
        return QUADRANT
    r = _ints(args.rays)
    shift = [io._frac(x, "shift") for x in (args.shift or ["0", "0"])]
    try:
        return Cone(tuple(shift), (r[0], r[1]), (r[2], r[3]))
    except ValueError as exc:
        raise DocumentError(str(exc)) from None


def _ratfun_args(args, nvars: int = 2) -> RationalFunction:
    names = args.vars or io.var_names("x", nvars)
    if args.function is not None:
        return io.ratfun_from_json(_json_arg(args.function))
    if args.num is None:
        raise DocumentError("need --function or --num/--den")
    num = io.parse_poly(args.num, names)
    den = io.parse_poly(args.den, names) if args.den else SparsePoly.const(1, len(names))
    if den.is_zero():
        raise DocumentError("denominator is zero")
    return RationalFunction(num, den)


def _unipoly(text: str, names: Sequence[str], tvar: str) -> UniPoly:
    """Polynomial in ``tvar`` whose coefficients are polynomials in ``names``."""
    p = io.parse_poly(text, list(names) + [tvar])
    nv = len(names)
    it = nv
    if p.is_zero():
        raise DocumentError("polynomial is zero")
    if min(e[it] for e in p.terms) < 0:
        raise DocumentError(f"negative powers of {tvar} are not allowed")
    deg = max(e[it] for e in p.terms)
    parts: list[dict] = [dict() for _ in range(deg + 1)]
    for e, c in p.terms.items():
        parts[e[it]][e[:it]] = c
    coeffs = [RationalFunction(SparsePoly(nv, d), SparsePoly.const(1, nv)) if d else RationalFunction.const(0, nv)
              for d in parts]
    return UniPoly(nv, coeffs)


def _ratfun_payload(f: Optional[RationalFunction], names: Optional[Sequence[str]] = None) -> Any:
    if f is None:
        return None
    out = f.to_json(names)
    out["text"] = f.to_str(names)
    return out


# -- subcommands -------------------------------------------------------------------

def cmd_classify(args) -> tuple[str, dict, int]:
    conf = Configuration(_matrix(args.matrix))
    rep = analyze(conf)
    payload: dict = {
        "codimension": str(rep.codimension),
        "regular": rep.regular,
        "lattice-index": str(rep.lattice_index),
        "gale": io.matrix_to_json(conf.gale),
    }
    if conf.codimension != 2:
        raise DocumentError(f"classification needs codimension 2, got {conf.codimension}")
    cls = classify_stable_rational(conf)
    payload["tag"] = _TAGS[cls.tag]
    payload["pairing"] = [_strs(p) for p in cls.pairing]
    payload["zero-rows"] = _strs(cls.zero_rows)
    if cls.reduced is not None:
        payload["reduced"] = [_strs(r) for r in cls.reduced.data]
    if cls.cayley is not None:
        c = cls.cayley
        payload.update({
            "s": str(c.s),
            "r": str(c.r),
            "groups": [_strs(g) for g in c.groups],
            "essential": c.essential,
            "lawrence": c.lawrence,
        })
    if cls.equivalence is not None:
        payload["equivalence"] = [_strs(r) for r in cls.equivalence.data]
    return "classification", payload, EXIT_OK


def cmd_gale(args) -> tuple[str, dict, int]:
    B = kernel_basis(_matrix(args.matrix))
    return "matrix", io.matrix_to_json(B), EXIT_OK


def _cell_json(c) -> dict:
    return {
        "support": _strs(c.support),
        "witness": _strs(c.witness),
        "rays": [_strs(r) for r in c.rays],
        "vertices": [_qvec(v) for v in c.vertices],
        "kind": c.kind,
    }


def cmd_cells(args) -> tuple[str, dict, int]:
    arr = _gale_and_offsets(args)
    res = minimal_cells(arr, args.radius)
    payload = {
        "cells": [_cell_json(c) for c in res.cells],
        "radius": str(res.radius),
        "complete": res.complete,
        "outside-radius": [_strs(s) for s in res.outside_radius],
    }
    if args.dump_arrangement:
        payload["arrangement"] = {
            "forms": [[_strs(b), str(c)] for b, c in zip(arr.B, arr.v)],
            "chambers": [_cell_json(c) for c in chambers(arr)],
        }
    return "cells", payload, EXIT_OK


def cmd_euler_jacobi(args) -> tuple[str, dict, int]:
    arr = _gale_and_offsets(args)
    ok, w = euler_jacobi(arr)
    payload = {"holds": ok, "witness": _qvec(w) if w is not None else None}
    if w is not None:
        payload["values"] = _qvec(arr.forms(w))
    return "euler-jacobi", payload, EXIT_OK


def cmd_horn_expand(args) -> tuple[str, dict, int]:
    arr = _gale_and_offsets(args)
    if args.support is not None:
        want = frozenset(_ints(args.support))
        cells = {frozenset(c.support): c for c in minimal_cells(arr).cells}
        if want not in cells:
            raise DocumentError(f"no minimal cell with support {sorted(want)}")
        region = cells[want]
    else:
        region = _cone(args)
    s = horn_series(arr, region, args.order)
    return "series", s.to_json(), EXIT_OK


def cmd_expand(args) -> tuple[str, dict, int]:
    f = _ratfun_args(args)
    if f.nvars != 2:
        raise DocumentError("expand needs a bivariate function")
    s = expand_rational(f, tuple(_ints(args.vertex)), args.order)
    return "series", s.to_json(), EXIT_OK


def cmd_diagonal(args) -> tuple[str, dict, int]:
    s = _series(args.series)
    delta = _ints(args.delta)
    coeffs = diagonal(s, delta)
    return "diagonal", {"delta": _strs(delta), "coeffs": [qstr(c) for c in coeffs]}, EXIT_OK


def cmd_dilate(args) -> tuple[str, dict, int]:
    s = _series(args.series)
    cong = None
    if args.congruence is not None:
        c1, c2, mod, rho = _ints(args.congruence)
        if mod <= 0:
            raise DocumentError("congruence modulus must be positive")
        cong = ((c1, c2), mod, rho)
    return "series", dilate_restrict(s, _ints(args.r), cong).to_json(), EXIT_OK


def cmd_theta(args) -> tuple[str, dict, int]:
    s = _series(args.series)
    factors = []
    if args.operator is not None:
        data = _json_arg(args.operator)
        if isinstance(data, dict):
            data = data.get("factors")
        try:
            factors += list(ThetaOperator.from_json(data).factors)
        except (TypeError, ValueError, KeyError) as exc:
            raise DocumentError(f"bad theta operator: {exc}") from None
    for b1, b2, c in (args.factor or []):
        factors.append(((io._int(b1), io._int(b2)), io._int(c)))
    P = ThetaOperator(tuple(factors))
    return "series", apply_theta(P, s).to_json(), EXIT_OK


def cmd_reconstruct(args) -> tuple[str, dict, int]:
    s = _series(args.series)
    off = tuple(_ints(args.offset)) if args.offset else (0, 0)
    try:
        if args.auto:
            rec = reconstruct_auto(s, cap=args.cap, margin=args.margin, offset=off)
        else:
            if args.num_deg is None or args.den_deg is None:
                raise DocumentError("need --num-deg and --den-deg, or --auto")
            margin = 2 if args.margin is None else args.margin
            rec = reconstruct_rational(s, _ints(args.num_deg), _ints(args.den_deg), margin, off)
    except InsufficientTruncation as exc:
        raise DocumentError(f"truncation too short: {exc}") from None
    if rec is None:
        return "reconstruction", {"found": False}, EXIT_OK
    payload = {
        "found": True,
        "function": _ratfun_payload(rec.function),
        "dimension": str(rec.dimension),
        "fit-dimension": str(rec.fit_dimension),
        "num-deg": _strs(rec.num_bound),
        "den-deg": _strs(rec.den_bound),
    }
    return "reconstruction", payload, EXIT_OK


def cmd_horn_rational(args) -> tuple[str, dict, int]:
    arr = _gale_and_offsets(args)
    try:
        v = horn_rationality(arr.B, arr.v, _cone(args), args.order, args.cap)
    except ValueError as exc:
        raise DocumentError(str(exc)) from None
    payload: dict = {
        "tag": _TAGS[v.tag],
        "rational": v.rational,
        "reason": v.reason,
        "pairing": [_strs(p) for p in v.pairing],
        "s": _strs(v.s) if v.s is not None else None,
        "certificate": _ratfun_payload(v.certificate),
        "phi": _ratfun_payload(v.phi_closed_form),
    }
    if v.identity is not None:
        t = v.identity
        payload["identity"] = {
            "P1": t.P1.to_json(),
            "P2": t.P2.to_json(),
            "P1-text": t.P1.to_str(),
            "P2-text": t.P2.to_str(),
            "signs": _strs(t.signs),
            "scale": qstr(t.scale),
            "order": str(t.order),
        }
    else:
        payload["identity"] = None
    return "horn-verdict", payload, EXIT_INCONCLUSIVE if v.tag == "Inconclusive" else EXIT_OK


def _ratio_spec(args) -> FactorialRatioSpec:
    if args.spec is not None:
        kind, obj, _ = io.decode(_json_arg(args.spec))
        if kind != "ratio-spec":
            raise DocumentError(f"expected a ratio-spec document, got {kind!r}")
        return obj
    if args.p is None or args.q is None:
        raise DocumentError("need --p and --q, or --spec")
    try:
        return FactorialRatioSpec(tuple(_ints(args.p)), tuple(_ints(args.q)), tuple(_ints(args.k)))
    except ValueError as exc:
        raise DocumentError(str(exc)) from None


def cmd_ratio(args) -> tuple[str, dict, int]:
    spec = _ratio_spec(args)
    try:
        cls = classify_univariate(spec)
        integral = is_integral(spec)
    except ValueError as exc:
        raise DocumentError(str(exc)) from None
    payload = {
        "spec": spec.to_json(),
        "integral": integral,
        "height": str(cls.height),
        "class": cls.short,
        "a": str(cls.a) if cls.a is not None else None,
        "b": str(cls.b) if cls.b is not None else None,
        "matches": [_strs(m) for m in cls.matches],
    }
    return "ratio", payload, EXIT_OK


def cmd_landau(args) -> tuple[str, dict, int]:
    spec = _ratio_spec(args)
    try:
        prof = landau_profile(spec)
    except ValueError as exc:
        raise DocumentError(str(exc)) from None
    payload = {
        "spec": spec.to_json(),
        "intervals": [[qstr(a), qstr(b), str(v)] for a, b, v in prof.intervals()],
        "minimum": str(prof.minimum()),
        "height": str(prof.height),
        "nonnegative": prof.minimum() >= 0,
    }
    return "landau", payload, EXIT_OK


def _residue_spec(args) -> tuple[ResidueSpec, Optional[IntMatrix]]:
    c = tuple(_ints(args.c)) if args.c else (1, 1)
    if args.matrix is not None:
        conf = Configuration(_matrix(args.matrix))
        spec = spec_from_configuration(conf, c, args.a)
        B = _matrix(args.gale) if args.gale is not None else conf.gale
        return spec, B
    if args.f1 is None or args.f2 is None:
        raise DocumentError("need --matrix, or --f1 and --f2")
    names = args.vars or []
    f1 = _unipoly(args.f1, names, args.t)
    f2 = _unipoly(args.f2, names, args.t)
    B = _matrix(args.gale) if args.gale is not None else None
    return ResidueSpec(f1, f2, c, args.a, tuple(names)), B


def cmd_residue(args) -> tuple[str, dict, int]:
    try:
        spec, B = _residue_spec(args)
    except ValueError as exc:
        raise DocumentError(str(exc)) from None
    res = toric_residue_r1(spec, B)
    names = spec.names
    payload = {
        "value": _ratfun_payload(res.value, names),
        "R1": _ratfun_payload(res.R1, names),
        "R2": _ratfun_payload(res.R2, names),
        "interior": res.interior,
        "agree": res.agree,
        "dehomogenized": _ratfun_payload(res.dehomogenized),
        "c": _strs(spec.c),
        "a": str(spec.a),
    }
    if args.closure:
        payload["residue-at-zero"] = _ratfun_payload(residue_at_zero(spec), names)
        payload["residue-at-infinity"] = _ratfun_payload(residue_at_infinity(spec), names)
    return "residue", payload, EXIT_OK


def cmd_resultant(args) -> tuple[str, dict, int]:
    try:
        spec, _ = _residue_spec(args)
    except ValueError as exc:
        raise DocumentError(str(exc)) from None
    r = sylvester_resultant(spec.f1, spec.f2)
    return "ratfun", r.to_json(spec.names), EXIT_OK


def _run_example(name: str) -> dict:
    from .catalog import verify_example

    return verify_example(name).to_json()


def cmd_verify_example(args) -> tuple[str, dict, int]:
    from .catalog import EXAMPLES

    names = list(EXAMPLES) if args.name == "all" else [args.name]
    if any(n not in EXAMPLES for n in names):
        raise DocumentError(f"unknown example {args.name!r}; choose from all, {', '.join(EXAMPLES)}")
    threads = int(os.environ.get("RATHYPER_THREADS", "1") or 1)
    if len(names) > 1 and threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            reports = list(ex.map(_run_example, names))
    else:
        reports = [_run_example(n) for n in names]
    ok = all(r["pass"] for r in reports)
    payload = {"pass": ok, "reports": reports}
    return "verification", payload, EXIT_OK if ok else EXIT_VERIFY


# -- parser ------------------------------------------------------------------------

def _add_arrangement(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--gale", help="Gale dual matrix (n x 2): path, '-' or inline JSON")
    g.add_argument("--matrix", help="configuration matrix; its kernel basis is used")
    p.add_argument("--v", "--k", dest="v", nargs="+", metavar="INT", help="offsets of the linear forms")


def _add_cone(p: argparse.ArgumentParser) -> None:
    p.add_argument("--rays", nargs=4, metavar="INT", help="mu1 and mu2 (default: first quadrant)")
    p.add_argument("--shift", nargs=2, metavar="Q", help="apex of the cone")


def _add_ratio(p: argparse.ArgumentParser) -> None:
    p.add_argument("--p", nargs="+", metavar="INT")
    p.add_argument("--q", nargs="+", metavar="INT")
    p.add_argument("--k", nargs="+", metavar="INT", help="shifts, one per p entry")
    p.add_argument("--spec", help="ratio-spec document")


def _add_residue(p: argparse.ArgumentParser) -> None:
    p.add_argument("--matrix", help="Cayley configuration with two groups over one exponent")
    p.add_argument("--f1", help="polynomial in t, e.g. 'z1 + z2*t'")
    p.add_argument("--f2")
    p.add_argument("--vars", nargs="+", help="coefficient variable names for --f1/--f2")
    p.add_argument("--t", default="t", help="name of the integration variable")
    p.add_argument("--c", nargs=2, metavar="INT", help="powers of f1 and f2 (default 1 1)")
    p.add_argument("--a", type=int, default=1, help="exponent of t in the numerator")
    p.add_argument("--gale", help="Gale basis used for dehomogenization")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rathyper", description="Exact rational hypergeometric toolkit.")
    ap.add_argument("--output", "-o", help="write the JSON result here instead of stdout")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", default=argparse.SUPPRESS, help="write the JSON result here")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name: str, **kw) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], **kw)

    p = add("classify", help="classify a codimension-two configuration")
    p.add_argument("--matrix", required=True)
    p.set_defaults(fn=cmd_classify)

    p = add("gale", help="integer kernel basis of a configuration")
    p.add_argument("--matrix", required=True)
    p.set_defaults(fn=cmd_gale)

    p = add("cells", help="minimal negative-support cells of the arrangement")
    _add_arrangement(p)
    p.add_argument("--radius", type=int)
    p.add_argument("--dump-arrangement", action="store_true", help="include every chamber for plotting")
    p.set_defaults(fn=cmd_cells)

    p = add("euler-jacobi", help="is there a point where every form is negative")
    _add_arrangement(p)
    p.set_defaults(fn=cmd_euler_jacobi)

    p = add("horn-expand", help="truncated Horn series over a cell or cone")
    _add_arrangement(p)
    _add_cone(p)
    p.add_argument("--support", nargs="+", metavar="INT", help="sum over the minimal cell with this support")
    p.add_argument("--order", type=int, default=10)
    p.set_defaults(fn=cmd_horn_expand)

    p = add("expand", help="Laurent expansion of a rational function from a vertex")
    p.add_argument("--function", help="ratfun document")
    p.add_argument("--num")
    p.add_argument("--den")
    p.add_argument("--vars", nargs=2)
    p.add_argument("--vertex", nargs=2, default=["0", "0"], metavar="INT")
    p.add_argument("--order", type=int, default=10)
    p.set_defaults(fn=cmd_expand)

    p = add("diagonal", help="coefficients along a direction")
    p.add_argument("--series", required=True)
    p.add_argument("--delta", nargs=2, default=["1", "1"], metavar="INT")
    p.set_defaults(fn=cmd_diagonal)

    p = add("dilate", help="dilate exponents and restrict to a congruence class")
    p.add_argument("--series", required=True)
    p.add_argument("--r", nargs=2, default=["1", "1"], metavar="INT")
    p.add_argument("--congruence", nargs=4, metavar=("C1", "C2", "MOD", "RHO"))
    p.set_defaults(fn=cmd_dilate)

    p = add("theta", help="apply a product of shifted theta operators")
    p.add_argument("--series", required=True)
    p.add_argument("--operator", help="theta document or list of [[b1,b2],c] factors")
    p.add_argument("--factor", nargs=3, action="append", metavar=("B1", "B2", "C"))
    p.set_defaults(fn=cmd_theta)

    p = add("reconstruct", help="rational function from a truncated series")
    p.add_argument("--series", required=True)
    p.add_argument("--num-deg", nargs=2, metavar="INT")
    p.add_argument("--den-deg", nargs=2, metavar="INT")
    p.add_argument("--margin", type=int)
    p.add_argument("--offset", nargs=2, metavar="INT", help="lowest numerator exponent")
    p.add_argument("--auto", action="store_true", help="search degree bounds up to --cap")
    p.add_argument("--cap", type=int, default=4)
    p.set_defaults(fn=cmd_reconstruct)

    p = add("horn-rational", help="decide rationality of a Horn series")
    _add_arrangement(p)
    _add_cone(p)
    p.add_argument("--order", type=int, default=16)
    p.add_argument("--cap", type=int, default=3)
    p.set_defaults(fn=cmd_horn_rational)

    p = add("ratio", help="integrality and class of a factorial ratio")
    _add_ratio(p)
    p.set_defaults(fn=cmd_ratio)

    p = add("landau", help="the step function of a factorial ratio")
    _add_ratio(p)
    p.set_defaults(fn=cmd_landau)

    p = add("residue", help="global residue sum for two polynomials in one variable")
    _add_residue(p)
    p.add_argument("--closure", action="store_true", help="also report residues at 0 and infinity")
    p.set_defaults(fn=cmd_residue)

    p = add("resultant", help="Sylvester resultant of f1 and f2 in t")
    _add_residue(p)
    p.set_defaults(fn=cmd_resultant)

    p = add("verify-example", help="run a named worked example end to end")
    p.add_argument("name", help="example name or 'all'")
    p.set_defaults(fn=cmd_verify_example)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        kind, payload, code = args.fn(args)
    except (DocumentError, KeyError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"rathyper: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"rathyper: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ArithmeticError as exc:
        print(f"rathyper: internal check failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    text = dumps(io.document(kind, payload))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
