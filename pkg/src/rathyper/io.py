"""Canonical JSON documents: every number is a decimal string.

A document is ``{"schema": SCHEMA, "kind": <kind>, ...payload}``. Typed
payloads (matrix, series, rational function, theta operator, factorial-ratio
spec) decode to library objects; result payloads stay plain dicts. Encoding
is key-sorted and compact, so decode followed by encode is byte-identical.
"""
from __future__ import annotations

import ast
import json
import sys
from fractions import Fraction
from typing import Any, Sequence

from .lattice import IntMatrix
from .poly import RationalFunction, SparsePoly
from .ratio1d import FactorialRatioSpec
from .series2d.series import ThetaOperator, TruncatedSeries

SCHEMA = "rathyper/1"


class DocumentError(ValueError):
    """Malformed or unsupported JSON input."""


def qstr(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def load(path: str) -> Any:
    text = read_text(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from None


def _int(x: Any, what: str = "entry") -> int:
    if isinstance(x, bool):
        raise DocumentError(f"{what}: expected an integer, got a boolean")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x)
        except ValueError:
            pass
    raise DocumentError(f"{what}: expected an integer, got {x!r}")


def _frac(x: Any, what: str = "entry") -> Fraction:
    if isinstance(x, (int, str)) and not isinstance(x, bool):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError):
            pass
    raise DocumentError(f"{what}: expected an exact rational, got {x!r}")


# -- typed payloads -----------------------------------------------------------

def matrix_to_json(M: IntMatrix) -> dict:
    return {"rows": str(M.rows), "cols": str(M.cols), "data": [[str(x) for x in r] for r in M.data]}


def matrix_from_json(data: Any) -> IntMatrix:
    """Accepts a matrix payload, a configuration payload or a bare list of rows."""
    if isinstance(data, dict):
        if "matrix" in data:
            return matrix_from_json(data["matrix"])
        if "data" not in data:
            raise DocumentError("matrix needs a 'data' field")
        rows = data["data"]
        cols = _int(data.get("cols", len(rows[0]) if rows else 0), "cols")
    elif isinstance(data, list):
        rows = data
        cols = len(rows[0]) if rows else 0
    else:
        raise DocumentError("matrix must be an object or a list of rows")
    try:
        return IntMatrix([[_int(x) for x in r] for r in rows], cols=cols)
    except (TypeError, ValueError) as exc:
        raise DocumentError(f"bad matrix: {exc}") from None


def ratfun_from_json(data: Any) -> RationalFunction:
    try:
        return RationalFunction.from_json(data)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"bad rational function: {exc}") from None


def series_from_json(data: Any) -> TruncatedSeries:
    try:
        return TruncatedSeries.from_json(data)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"bad series: {exc}") from None


def document(kind: str, payload: dict) -> dict:
    out = {"schema": SCHEMA, "kind": kind}
    out.update(payload)
    return out


def encode(kind: str, obj: Any, **extra) -> dict:
    """Typed object -> document."""
    if kind == "matrix":
        payload = matrix_to_json(obj)
    elif kind == "series":
        payload = obj.to_json()
    elif kind == "ratfun":
        payload = obj.to_json()
    elif kind == "theta":
        payload = {"factors": obj.to_json()}
    elif kind == "ratio-spec":
        payload = obj.to_json()
    else:
        payload = dict(obj)
    payload.update(extra)
    return document(kind, payload)


TYPED = ("matrix", "series", "ratfun", "theta", "ratio-spec")


def decode(doc: Any) -> tuple[str, Any, dict]:
    """Document -> (kind, typed object or payload dict, extra fields)."""
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    schema = doc.get("schema")
    if schema != SCHEMA:
        raise DocumentError(f"unsupported schema {schema!r} (expected {SCHEMA!r})")
    kind = doc.get("kind")
    if not isinstance(kind, str):
        raise DocumentError("document has no kind")
    payload = {k: v for k, v in doc.items() if k not in ("schema", "kind")}
    if kind == "matrix":
        keys = ("rows", "cols", "data")
        obj = matrix_from_json(payload)
    elif kind == "series":
        keys = ("shift", "rays", "order", "coeffs")
        obj = series_from_json(payload)
    elif kind == "ratfun":
        keys = ("nvars", "num", "den", "vars")
        obj = ratfun_from_json(payload)
    elif kind == "theta":
        keys = ("factors",)
        try:
            obj = ThetaOperator.from_json(payload["factors"])
        except (KeyError, TypeError, ValueError) as exc:
            raise DocumentError(f"bad theta operator: {exc}") from None
    elif kind == "ratio-spec":
        keys = ("p", "q", "k")
        try:
            obj = FactorialRatioSpec([_int(x) for x in payload["p"]], [_int(x) for x in payload["q"]],
                                     [_int(x) for x in payload.get("k", [])])
        except (KeyError, TypeError, ValueError) as exc:
            raise DocumentError(f"bad factorial-ratio spec: {exc}") from None
    else:
        return kind, payload, {}
    extra = {k: v for k, v in payload.items() if k not in keys}
    if kind == "ratfun" and "vars" in payload:
        extra["vars"] = payload["vars"]
    return kind, obj, extra


def reencode(doc: dict) -> str:
    """decode then encode; used to check the round-trip property."""
    kind, obj, extra = decode(doc)
    if kind in TYPED:
        if kind == "ratfun" and "vars" in extra:
            extra = dict(extra)
            names = extra.pop("vars")
            out = document(kind, obj.to_json(names))
            out.update(extra)
            return dumps(out)
        return dumps(encode(kind, obj, **extra))
    return dumps(document(kind, obj))


# -- polynomial expressions -----------------------------------------------------

def parse_poly(text: str, names: Sequence[str]) -> SparsePoly:
    """Integer Laurent polynomial from an expression like ``1 - x1*x2^2 + 3*x1``.

    Supports + - * and ^ or ** with integer exponents (negative only on
    variables); parsed with the ``ast`` module, nothing is evaluated.
    """
    nv = len(names)
    index = {n: i for i, n in enumerate(names)}
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise DocumentError(f"cannot parse polynomial {text!r}: {exc.msg}") from None

    def ev(node) -> SparsePoly:
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return SparsePoly.const(node.value, nv)
        if isinstance(node, ast.Name):
            if node.id not in index:
                raise DocumentError(f"unknown variable {node.id!r} (expected one of {', '.join(names)})")
            return SparsePoly.var(index[node.id], nv)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                k = _const_int(node.right)
                return ev(node.left) ** k
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
        raise DocumentError(f"unsupported syntax in polynomial {text!r}")

    def _const_int(node) -> int:
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -_const_int(node.operand)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        raise DocumentError("exponents must be integer literals")

    try:
        return ev(tree)
    except ValueError as exc:
        if isinstance(exc, DocumentError):
            raise
        raise DocumentError(str(exc)) from None


def var_names(prefix: str, n: int) -> list[str]:
    return [f"{prefix}{i + 1}" for i in range(n)]

