"""JSON text form of an algebra.

::

    {
      "dim": 3,
      "labels": ["e1", "e2", "e3"],
      "products": [{"left": 1, "right": 1, "coeffs": {"2": "1"}}],
      "params": {"alpha": "1/2", "beta": null}
    }

Indices are 1-based.  Coefficients are scalar text (rationals or
polynomials in parameters); ``coeffs`` may also be a dense list of length
``dim``.  Output is canonical: products sorted, rationals in lowest terms,
zero coefficients omitted.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .algebra import Algebra
from .errors import DimensionMismatch, LeibnizError, ParseError
from .scalars import Poly, format_scalar, parse_scalar

__all__ = ["serialize", "parse", "load", "dump"]


def serialize(A: Algebra) -> str:
    products = []
    for (i, j), terms in sorted(A.sparse_products().items()):
        products.append(
            {"left": i + 1, "right": j + 1, "coeffs": {str(k + 1): format_scalar(c) for k, c in terms}}
        )
    params = {k: (None if v is None else format_scalar(v)) for k, v in sorted(A.params.items())}
    doc = {"dim": A.dim, "labels": list(A.labels), "products": products, "params": params}
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _where(text: str, needle: str, start: int = 0) -> tuple[int | None, int | None]:
    pos = text.find(needle, start)
    if pos < 0:
        return None, None
    line = text.count("\n", 0, pos) + 1
    return line, pos - (text.rfind("\n", 0, pos) + 1) + 1


def _fail(text: str, message: str, needle: str | None = None) -> ParseError:
    line, col = _where(text, needle) if needle else (None, None)
    return ParseError(message, line=line, column=col)


def _index(text: str, value, dim: int, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise _fail(text, f"{what} must be an integer, got {value!r}", json.dumps(value))
    if not 1 <= value <= dim:
        raise DimensionMismatch(f"{what} {value} outside 1..{dim}")
    return value - 1


def _scalar(text: str, value):
    if isinstance(value, bool):
        raise _fail(text, f"coefficient must be a string or number, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise _fail(text, f"coefficient must be a string or number, got {value!r}", json.dumps(value))
    try:
        return parse_scalar(value)
    except ParseError as exc:
        line, col = _where(text, json.dumps(value))
        raise ParseError(f"bad scalar {value!r}: {exc.message}", line=line, column=col) from None


def parse(text: str) -> Algebra:
    """Inverse of :func:`serialize`; raises :class:`ParseError` or :class:`DimensionMismatch`."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno) from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", line=1, column=1)
    for key in ("dim", "products"):
        if key not in doc:
            raise ParseError(f"missing key {key!r}", line=1, column=1)
    dim = doc["dim"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 0:
        raise _fail(text, f"dim must be a non-negative integer, got {dim!r}", '"dim"')
    labels = doc.get("labels") or ()
    if not isinstance(labels, (list, tuple)) or not all(isinstance(x, str) for x in labels):
        raise _fail(text, "labels must be a list of strings", '"labels"')
    if labels and len(labels) != dim:
        raise DimensionMismatch(f"{len(labels)} labels for dimension {dim}")
    if not isinstance(doc["products"], list):
        raise _fail(text, "products must be a list", '"products"')
    table: dict[tuple[int, int], list] = {}
    for rec in doc["products"]:
        if not isinstance(rec, dict) or not {"left", "right", "coeffs"} <= rec.keys():
            raise _fail(text, f"product record needs left, right and coeffs: {rec!r}", '"products"')
        i = _index(text, rec["left"], dim, "left index")
        j = _index(text, rec["right"], dim, "right index")
        vec = table.setdefault((i, j), [Fraction(0)] * dim)
        coeffs = rec["coeffs"]
        if isinstance(coeffs, list):
            if len(coeffs) != dim:
                raise DimensionMismatch(
                    f"product [{i + 1},{j + 1}] has {len(coeffs)} coefficients in dimension {dim}"
                )
            items = [(k + 1, c) for k, c in enumerate(coeffs)]
        elif isinstance(coeffs, dict):
            items = []
            for k, c in coeffs.items():
                try:
                    items.append((int(k), c))
                except ValueError:
                    raise _fail(text, f"coefficient key must be an index, got {k!r}", json.dumps(k)) from None
        else:
            raise _fail(text, "coeffs must be an object or a list", '"coeffs"')
        for k, c in items:
            k0 = _index(text, k, dim, "target index")
            vec[k0] = vec[k0] + _scalar(text, c)
    params = {}
    raw_params = doc.get("params") or {}
    if not isinstance(raw_params, dict):
        raise _fail(text, "params must be an object", '"params"')
    for name, value in raw_params.items():
        if value is None:
            params[name] = None
            continue
        v = _scalar(text, value)
        if isinstance(v, Poly):
            raise _fail(text, f"parameter {name} must be rational or null", json.dumps(name))
        params[name] = v
    try:
        return Algebra(dim, {k: tuple(v) for k, v in table.items()}, tuple(labels), params)
    except DimensionMismatch:
        raise
    except LeibnizError as exc:
        raise ParseError(str(exc)) from None


def dump(A: Algebra, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(A))


def load(path) -> Algebra:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())
