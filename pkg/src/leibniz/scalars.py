"""Exact scalars: rationals and sparse multivariate polynomials over Q.

A *scalar* is either a :class:`fractions.Fraction` or a :class:`Poly`.  Every
arithmetic result is canonicalized, so a polynomial that collapses to a
constant comes back as a ``Fraction``.  Plain ``int`` values are accepted on
input everywhere and promoted.

Text grammar (used by the file format and the CLI)::

    3*a1 - 1/2*b2^2 + 7/3
    (x + 1)*(x - 1)

Whitespace is insignificant, ``^`` is the exponent operator and ``/`` is only
allowed between integer literals.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import ParseError

__all__ = [
    "Poly",
    "Scalar",
    "ZERO",
    "ONE",
    "to_scalar",
    "var",
    "is_rational",
    "is_zero",
    "scalar_arith",
    "poly_eval",
    "variables_of",
    "parse_scalar",
    "format_scalar",
    "univariate_coeffs",
    "univariate_gcd",
]

Monomial = tuple[tuple[str, int], ...]

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

ZERO = Fraction(0)
ONE = Fraction(1)


def _check_name(name: str) -> str:
    if not isinstance(name, str) or not name.isascii() or not _IDENT.match(name):
        raise ValueError(f"invalid variable name {name!r}")
    return name


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


class Poly:
    """Sparse polynomial with rational coefficients.

    Terms are stored as ``{monomial: coefficient}`` where a monomial is a
    sorted tuple of ``(variable, exponent)`` pairs; the empty tuple is the
    constant term.  Zero coefficients are never stored.  Instances are
    immutable and hashable.

    Construct through :func:`var`, :func:`parse_scalar` or arithmetic; the
    constructor is low level and does not canonicalize to ``Fraction``.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Fraction]):
        self._terms = {m: Fraction(c) for m, c in terms.items() if c != 0}
        self._hash: int | None = None

    # -- construction ------------------------------------------------------
    @staticmethod
    def _canon(terms: dict[Monomial, Fraction]) -> Scalar:
        terms = {m: c for m, c in terms.items() if c != 0}
        if not terms:
            return ZERO
        if len(terms) == 1 and () in terms:
            return terms[()]
        p = Poly.__new__(Poly)
        p._terms = terms
        p._hash = None
        return p

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def variables(self) -> frozenset[str]:
        return frozenset(v for m in self._terms for v, _ in m)

    def degree(self) -> int:
        return max(sum(e for _, e in m) for m in self._terms)

    def linear_coefficient(self, name: str) -> Fraction | None:
        """Return ``r`` when ``self == r*name + p`` with ``p`` free of *name*.

        ``None`` if *name* is absent or appears non-linearly or with a
        non-constant cofactor.
        """
        found = None
        for m, c in self._terms.items():
            for v, e in m:
                if v == name:
                    if m != ((name, 1),):
                        return None
                    found = c
        return found

    # -- arithmetic --------------------------------------------------------
    @staticmethod
    def _terms_of(x) -> dict[Monomial, Fraction] | None:
        if isinstance(x, Poly):
            return x._terms
        if isinstance(x, (int, Fraction)):
            return {(): Fraction(x)} if x != 0 else {}
        return None

    def __add__(self, other):
        o = Poly._terms_of(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for m, c in o.items():
            out[m] = out.get(m, ZERO) + c
        return Poly._canon(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._canon({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        o = Poly._terms_of(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for m, c in o.items():
            out[m] = out.get(m, ZERO) - c
        return Poly._canon(out)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = Poly._terms_of(other)
        if o is None:
            return NotImplemented
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in o.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, ZERO) + c1 * c2
        return Poly._canon(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("polynomial division by zero")
            inv = 1 / Fraction(other)
            return Poly._canon({m: c * inv for m, c in self._terms.items()})
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result: Scalar = ONE
        base: Scalar = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison --------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            # a canonical Poly is never constant
            return False
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"Poly({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)

    # -- substitution ------------------------------------------------------
    def subs(self, bindings: Mapping[str, "Scalar"]) -> Scalar:
        """Substitute scalars (rationals or polynomials) for variables."""
        if not bindings or not (self.variables() & bindings.keys()):
            return self
        total: Scalar = ZERO
        for m, c in self._terms.items():
            term: Scalar = c
            rest: list[tuple[str, int]] = []
            for v, e in m:
                if v in bindings:
                    term = term * (to_scalar(bindings[v]) ** e)
                else:
                    rest.append((v, e))
            if rest:
                term = term * Poly._canon({tuple(rest): ONE})
            total = total + term
        return total


Scalar = Union[Fraction, Poly]


def to_scalar(x) -> Scalar:
    """Promote ``int``/``Fraction``/``Poly``/``str`` to a canonical scalar."""
    if isinstance(x, Poly):
        return Poly._canon(dict(x._terms))
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"cannot interpret {type(x).__name__} as a scalar")


def var(name: str) -> Poly:
    """The polynomial consisting of the single variable *name*."""
    return Poly._canon({((_check_name(name), 1),): ONE})  # type: ignore[return-value]


def is_rational(x: Scalar) -> bool:
    return not isinstance(x, Poly)


def is_zero(x: Scalar) -> bool:
    return not isinstance(x, Poly) and x == 0


def variables_of(xs: Iterable[Scalar]) -> frozenset[str]:
    out: set[str] = set()
    for x in xs:
        if isinstance(x, Poly):
            out |= x.variables()
    return frozenset(out)


def scalar_arith(a, b, op: str) -> Scalar:
    """Exact ``a op b`` for ``op`` in ``{"add", "sub", "mul"}``."""
    a, b = to_scalar(a), to_scalar(b)
    if op == "add":
        return to_scalar(a + b)
    if op == "sub":
        return to_scalar(a - b)
    if op == "mul":
        return to_scalar(a * b)
    raise ValueError(f"unknown operation {op!r}")


def poly_eval(p, bindings: Mapping[str, object]) -> Scalar:
    """Substitute rational values for variables; unbound variables remain."""
    p = to_scalar(p)
    if isinstance(p, Poly):
        return p.subs({k: to_scalar(v) for k, v in bindings.items()})
    return p


# ---------------------------------------------------------------------------
# text form

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:  # only trailing whitespace left
                break
            if m.group(1) is not None:
                self.tokens.append(("num", m.group(1), m.start(1)))
            elif m.group(2) is not None:
                self.tokens.append(("id", m.group(2), m.start(2)))
            elif m.group(3) is not None:
                self.tokens.append(("op", m.group(3), m.start(3)))
            pos = m.end()
        self.i = 0

    def error(self, msg: str):
        col = self.tokens[self.i][2] + 1 if self.i < len(self.tokens) else len(self.text) + 1
        raise ParseError(f"{msg} in scalar {self.text!r}", 1, col)

    def peek(self, value: str | None = None):
        if self.i >= len(self.tokens):
            return None
        tok = self.tokens[self.i]
        if value is not None and not (tok[0] == "op" and tok[1] == value):
            return None
        return tok

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self) -> Scalar:
        if not self.tokens:
            raise ParseError("empty scalar", 1, 1)
        value = self.expr()
        if self.i != len(self.tokens):
            self.error("unexpected token")
        return value

    def expr(self) -> Scalar:
        sign = 1
        if self.peek("+"):
            self.take()
        elif self.peek("-"):
            self.take()
            sign = -1
        value = self.term() * sign
        while self.peek("+") or self.peek("-"):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Scalar:
        value = self.factor()
        while self.peek("*"):
            self.take()
            value = value * self.factor()
        return value

    def factor(self) -> Scalar:
        tok = self.peek()
        if tok is None:
            self.error("unexpected end")
        if tok[0] == "num":
            self.take()
            num = Fraction(int(tok[1]))
            if self.peek("/"):
                self.take()
                den = self.peek()
                if den is None or den[0] != "num":
                    self.error("expected integer denominator")
                self.take()
                if int(den[1]) == 0:
                    self.error("zero denominator")
                num = num / int(den[1])
            return num
        if tok[0] == "id":
            self.take()
            base: Scalar = var(tok[1])
        elif tok[1] == "(":
            self.take()
            base = self.expr()
            if not self.peek(")"):
                self.error("expected ')'")
            self.take()
        elif tok[1] == "-":
            self.take()
            return -self.factor()
        else:
            self.error(f"unexpected {tok[1]!r}")
        if self.peek("^"):
            self.take()
            exp = self.peek()
            if exp is None or exp[0] != "num":
                self.error("expected integer exponent")
            self.take()
            base = base ** int(exp[1])
        return base


def parse_scalar(text: str) -> Scalar:
    """Parse the scalar text grammar; rationals come back in lowest terms."""
    return to_scalar(_Parser(text).parse())


def _mono_key(m: Monomial):
    return (-sum(e for _, e in m), m)


def _format_mono(m: Monomial) -> str:
    return "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)


def _format_fraction(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_scalar(x) -> str:
    """Canonical text: graded order, highest degree first, constant last."""
    x = to_scalar(x)
    if not isinstance(x, Poly):
        return _format_fraction(x)
    parts: list[str] = []
    for m in sorted(x._terms, key=_mono_key):
        c = x._terms[m]
        neg = c < 0
        a = -c if neg else c
        if not m:
            body = _format_fraction(a)
        elif a == 1:
            body = _format_mono(m)
        else:
            body = f"{_format_fraction(a)}*{_format_mono(m)}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts)


# ---------------------------------------------------------------------------
# univariate helpers (dense coefficient lists, lowest degree first)


def univariate_coeffs(p: Scalar, name: str) -> list[Fraction]:
    """Coefficient list of a polynomial in the single variable *name*."""
    p = to_scalar(p)
    if not isinstance(p, Poly):
        return [p] if p != 0 else []
    extra = p.variables() - {name}
    if extra:
        raise ValueError(f"not univariate in {name}: extra variables {sorted(extra)}")
    deg = p.degree()
    out = [ZERO] * (deg + 1)
    for m, c in p._terms.items():
        out[m[0][1] if m else 0] = c
    return out


def _trim(c: list[Fraction]) -> list[Fraction]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = _trim(a)
    b = _trim(b)
    lead = b[-1]
    while len(a) >= len(b):
        q = a[-1] / lead
        shift = len(a) - len(b)
        for i, bc in enumerate(b):
            a[shift + i] -= q * bc
        a = _trim(a)
    return a


def univariate_gcd(polys: Iterable[list[Fraction]]) -> list[Fraction]:
    """Monic gcd of coefficient lists; ``[]`` (the zero polynomial) if all vanish."""
    g: list[Fraction] = []
    for p in polys:
        p = _trim(p)
        while p:
            g, p = p, (_poly_rem(g, p) if g else [])
    g = _trim(g)
    if g:
        lead = g[-1]
        g = [c / lead for c in g]
    return g
