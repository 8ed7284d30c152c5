"""Multiplication tables of the quasi-filiform families and their solvable extensions.

Nilradicals (``n`` is the nilradical dimension)::

    M1      M^{1,delta}, delta in {0, 1}; conventions "rebased" (default) and "original"
    M2      M^{2,lambda}, lambda rational or symbolic
    M3      M^{3,alpha}, alpha in {0, 1}, alpha = 1 only for n = 6;
            "original", plus "rebased" for alpha = 1 (default there)
    M4      M^4

Solvable extensions ``R(M, s)`` have basis ``e1..en, x`` (``s = 1``) or
``e1..en, x1, x2`` (``s = 2``).  Their ids are ``<group>.<variant>`` for
groups with several variants (``RM10_1.R7``) and just the group otherwise
(``RM31_1``).  They are built on the rebased ``M1``/``M3`` tables except the
``RM30`` groups, which use the original ``M^{3,0}`` table.

Any product whose target index exceeds ``n`` is dropped.  Unbound continuous
parameters stay symbolic (as polynomial variables with the parameter's name);
discrete parameters must be bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Mapping

from .algebra import Algebra, LinearMap, from_table
from .errors import BadDim, BadParam
from .linalg import ExactMatrix
from .scalars import ONE, ZERO, Poly, Scalar, to_scalar, var

__all__ = [
    "ParamSpec",
    "CatalogEntry",
    "SAMPLE_VALUES",
    "list_families",
    "get_entry",
    "make",
    "rebase_link",
    "sample_bindings",
    "nilradical_subspace_indices",
    "rm10_r1_scaling_map",
    "rm10_r1_scaled_params",
]

SAMPLE_VALUES: tuple[Fraction, ...] = (Fraction(0), Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 2))


@dataclass(frozen=True)
class ParamSpec:
    """A parameter slot.

    ``name`` may contain ``{}`` for an indexed family; ``indices(n)`` then
    gives the indices.  ``choices`` restricts a discrete parameter;
    ``excluded(n)`` lists forbidden values of a continuous one.
    """

    name: str
    choices: tuple[Fraction, ...] | None = None
    excluded: Callable[[int], frozenset[Fraction]] | None = None
    indices: Callable[[int], range] | None = None
    doc: str = ""
    choices_for: Callable[[int], tuple[Fraction, ...]] | None = None

    def choices_at(self, n: int) -> tuple[Fraction, ...] | None:
        return self.choices_for(n) if self.choices_for is not None else self.choices

    @property
    def discrete(self) -> bool:
        return self.choices is not None

    def names(self, n: int) -> list[str]:
        if self.indices is None:
            return [self.name]
        return [self.name.format(i) for i in self.indices(n)]

    def check(self, name: str, value: Scalar, n: int) -> None:
        if isinstance(value, Poly):
            if self.discrete:
                raise BadParam(f"{name} must be one of {_fmt_set(self.choices)}")
            return
        choices = self.choices_at(n)
        if choices is not None and value not in choices:
            raise BadParam(f"{name} = {value} not in {_fmt_set(choices)} for n = {n}")
        if self.excluded is not None and value in self.excluded(n):
            raise BadParam(f"{name} = {value} is excluded; {name} not in {_fmt_set(self.excluded(n))}")


def _fmt_set(values) -> str:
    return "{" + ", ".join(str(v) for v in sorted(values)) + "}"


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    kind: str  # "nilradical" | "solvable"
    title: str
    nilradical: str
    s: int
    params: tuple[ParamSpec, ...]
    build: Callable[[int, Mapping[str, Scalar], str], dict] = field(repr=False)
    min_n: int = 6
    fixed_n: int | None = None
    conventions: tuple[str, ...] = ("standard",)
    doc: str = ""

    def default_convention(self, params: Mapping[str, Scalar] | None = None) -> str:
        return self.conventions[0]

    def check_dim(self, n: int) -> None:
        if self.fixed_n is not None and n != self.fixed_n:
            raise BadDim(f"{self.id} exists only for n = {self.fixed_n}")
        if n < self.min_n:
            raise BadDim(f"{self.id} needs n >= {self.min_n}")

    def param_names(self, n: int) -> list[str]:
        return [name for spec in self.params for name in spec.names(n)]

    def labels(self, n: int) -> tuple[str, ...]:
        extra = ("x",) if self.s == 1 else tuple(f"x{j}" for j in range(1, self.s + 1))
        return tuple(f"e{i}" for i in range(1, n + 1)) + extra[: self.s]

    def sample_n(self) -> int:
        return self.fixed_n or 7


class _Table:
    """1-based sparse table builder accumulating ``[e_i, e_j] += c e_k``.

    No product lands on a complement vector, so targets past the nilradical
    dimension *n* are dropped.
    """

    def __init__(self, n: int):
        self.n = n
        self.data: dict[tuple[int, int], dict[int, Scalar]] = {}

    def add(self, i: int, j: int, k: int, c=1) -> None:
        if k > self.n or k < 1:
            return
        c = to_scalar(c)
        if not isinstance(c, Poly) and c == 0:
            return
        row = self.data.setdefault((i, j), {})
        row[k] = row.get(k, ZERO) + c

    def anti(self, i: int, x: int, terms: Mapping[int, object]) -> None:
        """``[e_i, x] = v`` and ``[x, e_i] = -v``."""
        for k, c in terms.items():
            self.add(i, x, k, c)
            self.add(x, i, k, -to_scalar(c))


# ---------------------------------------------------------------------------
# nilradical tables


def _m1(t: _Table, n: int, delta: Scalar, convention: str) -> None:
    if convention == "rebased":
        t.add(1, 1, n)
        for i in range(2, n - 1):
            t.add(i, 1, i + 1)
        for i in range(2, n - 3):
            t.add(i, 2, i + 3, delta)
    else:
        t.add(1, 1, n)
        t.add(n - 1, 1, 2)
        for i in range(2, n - 2):
            t.add(i, 1, i + 1)
        t.add(n - 1, n - 1, 4, delta)
        for i in range(2, n - 4):
            t.add(i, n - 1, i + 3, delta)


def _m2(t: _Table, n: int, lam: Scalar) -> None:
    for i in range(1, n - 2):
        t.add(i, 1, i + 1)
    t.add(n - 1, 1, n)
    t.add(1, n - 1, n, lam)


def _m3(t: _Table, n: int, alpha: Scalar, convention: str) -> None:
    if convention == "rebased":
        t.add(1, 1, 6)
        for i in range(2, 5):
            t.add(i, 1, i + 1)
            t.add(1, i, i + 1, -1)
        t.add(2, 2, 5)
    else:
        t.add(1, 1, 2)
        for i in range(3, n):
            t.add(i, 1, i + 1)
            t.add(1, i, i + 1, -1)
        t.add(3, 3, 6, alpha)


def _m4(t: _Table, n: int) -> None:
    for i in range(1, n - 2):
        t.add(i, 1, i + 1)
    t.add(1, n - 1, n)


# ---------------------------------------------------------------------------
# solvable tables; p maps parameter names to scalars


def _rm4_1(t, n, p):
    _m4(t, n)
    x = n + 1
    for i in range(1, n - 1):
        for j in range(i + 1, n - 1):
            t.add(i, x, j, p[f"a{j - i + 1}"])
    t.add(n - 1, x, n - 1)
    t.add(n, x, n)
    t.add(x, n - 1, n - 1, -1)
    t.add(x, x, n - 2, p[f"a{n - 1}"])


def _rm30_1(variant):
    def build(t, n, p):
        _m3(t, n, ZERO, "original")
        x = n + 1
        if variant == "R1":
            t.add(1, x, 1)
            t.add(2, x, 2, 2)
            for i in range(3, n):
                t.add(i, x, i, i - n)
                t.add(x, i, i, n - i)
            t.add(x, x, n)
            t.add(x, 1, 1, -1)
        elif variant == "R2":
            t.add(1, x, 2, p["alpha1"])
            t.add(x, 1, 2, p["alpha3"])
            t.add(x, x, 2, p["alpha4"])
            for i in range(3, n + 1):
                terms: dict[int, Scalar] = {i: ONE}
                terms[i + 2] = terms.get(i + 2, ZERO) + p["alpha2"]
                for k in range(i + 3, n + 1):
                    terms[k] = terms.get(k, ZERO) + p[f"beta{k - i - 2}"]
                t.anti(i, x, terms)
        elif variant == "R3":
            t.add(1, x, 1)
            t.add(2, x, 2, 2)
            t.add(x, 1, 1, -1)
            for i in range(3, n + 1):
                t.anti(i, x, {i: i - 3 + p["alpha"]})
        elif variant == "R4":
            t.anti(1, x, {1: 1, 3: 1})
            t.add(2, x, 2, 2)
            for i in range(3, n + 1):
                t.anti(i, x, {i: i - 2})

    return build


def _rm30_2(t, n, p):
    _m3(t, n, ZERO, "original")
    x1, x2 = n + 1, n + 2
    for x, shift in ((x1, 3), (x2, 2)):
        t.anti(1, x, {1: 1})
        t.add(2, x, 2, 2)
        for i in range(3, n + 1):
            t.anti(i, x, {i: i - shift})


def _rm10_1(variant):
    def build(t, n, p):
        _m1(t, n, ZERO, "rebased")
        x = n + 1
        if variant == "R1":
            t.add(1, x, n, p["alpha2"])
            t.add(x, x, n, p[f"alpha{n}"])
            for i in range(2, n):
                t.add(i, x, i)
                for s in range(i + 1, n):
                    t.add(i, x, s, p[f"alpha{s - i + 2}"])
            return
        a = p.get("alpha", ZERO)
        if variant == "R2":
            t.add(1, x, 1)
            for i in range(2, n):
                t.add(i, x, i, i - 1)
            t.add(n, x, n, 2)
            t.add(x, 1, 1, -1)
            t.add(x, 1, 2, a)
        elif variant == "R3":
            t.add(1, x, 1)
            t.add(2, x, 2, 2)
            t.add(2, x, n, a)
            for i in range(3, n):
                t.add(i, x, i, i)
            t.add(n, x, n, 2)
            t.add(x, 1, 1, -1)
        elif variant == "R4":
            t.add(1, x, 1)
            t.add(1, x, n - 2, a)
            t.add(x, x, n - 3, -a)
            for i in range(2, n):
                t.add(i, x, i, i + 3 - n)
            t.add(n, x, n - 1, a)
            t.add(n, x, n, 2)
            t.add(x, 1, 1, -1)
        elif variant == "R5":
            t.add(1, x, 1)
            t.add(1, x, n - 1, a)
            for i in range(2, n + 1):
                t.add(i, x, i, i + 2 - n)
            t.add(x, 1, 1, -1)
            t.add(x, x, n - 2, -a)
        elif variant == "R6":
            t.anti(1, x, {1: 1})
            for i in range(2, n):
                t.add(i, x, i, i + 1 - n)
            t.add(n, x, n, 2)
            t.add(x, x, n - 1, a)
        elif variant == "R7":
            t.anti(1, x, {1: 1})
            for i in range(2, n):
                t.add(i, x, i, i - 2 + a)
            t.add(n, x, n, 2)

    return build


def _rm2_1(variant, lam_fixed):
    def build(t, n, p):
        lam = p["lambda"] if lam_fixed is None else lam_fixed
        _m2(t, n, lam)
        x = n + 1

        def diag_ie(lo=1, hi=n - 2):
            for i in range(lo, hi + 1):
                t.add(i, x, i, i)

        if variant == "R1":
            t.anti(1, x, {1: 1, n - 1: 1})
            t.add(2, x, 2, 2)
            t.add(2, x, n, 1 + lam)
            for i in range(3, n - 1):
                t.add(i, x, i, i)
            t.anti(n - 1, x, {n - 1: 1})
            t.add(n, x, n, 2)
            t.add(x, n, n, lam - 1)
        elif variant == "R2":
            t.add(1, x, 1)
            t.add(1, x, n)
            t.add(n, x, n)
            diag_ie(2)
            t.add(x, 1, 1, -1)
            t.add(x, n, n, -1)
        elif variant == "R3":
            diag_ie()
            t.anti(n - 1, x, {n - 1: -1})
            t.add(x, 1, 1, -1)
            t.add(x, x, n)
        elif variant in ("R4", "R5", "R11"):
            a = p["alpha"] if variant != "R5" else lam
            diag_ie()
            t.add(n - 1, x, n - 1, a)
            t.add(n, x, n, 1 + a)
            t.add(x, 1, 1, -1)
            if variant != "R11":
                t.add(x, n - 1, n - 1, -a)
            if variant == "R4":
                t.add(x, n, n, -(a + 1))
        elif variant in ("R6", "R12"):
            for i in range(1, n - 2):
                for s in range(i + 1, n - 1):
                    t.add(i, x, s, p[f"alpha{s - i + 1}"])
            t.add(n - 1, x, n - 1)
            t.add(n - 1, x, n, p[f"alpha{n - 1}"])
            t.add(n, x, n)
            t.add(x, x, n - 2, p[f"alpha{n}"])
            if variant == "R6":
                t.add(x, n - 1, n - 1, -1)
                t.add(x, n - 1, n, -p[f"alpha{n - 1}"])
                t.add(x, n, n, -1)
        elif variant == "R7":
            diag_ie()
            t.add(n - 1, x, n - 1, -1)
            t.add(x, 1, 1, -1)
            t.add(x, x, n)
        elif variant == "R8":
            diag_ie()
            t.add(n - 1, x, n - 3)
            t.add(n - 1, x, n - 1, n - 3)
            t.add(n, x, n - 2)
            t.add(n, x, n, n - 2)
            t.add(x, 1, 1, -1)
        elif variant == "R9":
            diag_ie()
            t.add(n - 1, x, n - 2)
            t.add(n - 1, x, n - 1, n - 2)
            t.add(n, x, n, n - 1)
            t.add(x, 1, 1, -1)
        elif variant == "R10":
            t.add(1, x, 1)
            t.add(1, x, n)
            t.add(x, 1, 1, -1)
            diag_ie(2)
            t.add(n, x, n)
            t.add(x, x, n - 1, -1)

    return build


def _rm31_1(t, n, p):
    _m3(t, 6, ONE, "rebased")
    x = 7
    t.anti(1, x, {1: 1})
    for i in range(2, 5):
        t.anti(i, x, {i: i + 1})
    t.add(5, x, 5, 6)
    t.add(6, x, 6, 2)


def _rm10_2(t, n, p):
    _m1(t, n, ZERO, "rebased")
    x1, x2 = n + 1, n + 2
    t.anti(1, x1, {1: 1})
    for i in range(3, n):
        t.add(i, x1, i, i - 2)
    t.add(n, x1, n, 2)
    for i in range(2, n):
        t.add(i, x2, i)


def _rm20_2(t, n, p):
    _m2(t, n, ZERO)
    x1, x2 = n + 1, n + 2
    for i in range(1, n - 1):
        t.add(i, x1, i, i)
    t.add(n, x1, n)
    t.add(x1, 1, 1, -1)
    t.add(n - 1, x2, n - 1)
    t.add(n, x2, n)


def _rm2m1_2(t, n, p):
    _m2(t, n, -ONE)
    x1, x2 = n + 1, n + 2
    for i in range(1, n - 1):
        t.add(i, x1, i, i)
    t.add(x1, 1, 1, -1)
    t.anti(n, x1, {n: 1})
    t.anti(n - 1, x2, {n - 1: 1})
    t.anti(n, x2, {n: 1})


# ---------------------------------------------------------------------------
# registry

_BIT = (Fraction(0), Fraction(1))


def _cont(name: str, doc: str = "", excluded=None, indices=None) -> ParamSpec:
    return ParamSpec(name, None, excluded, indices, doc)


def _nil_build(fn):
    def build(n, p, convention):
        t = _Table(n)
        fn(t, n, p, convention)
        return t.data

    return build


def _solv_build(fn, s):
    def build(n, p, convention):
        t = _Table(n)
        fn(t, n, p)
        return t.data

    return build


def _entries() -> list[CatalogEntry]:
    out = [
        CatalogEntry(
            "M1", "nilradical", "M^{1,delta}", "M1", 0,
            (ParamSpec("delta", _BIT, doc="delta in {0, 1}"),),
            _nil_build(lambda t, n, p, c: _m1(t, n, p["delta"], c)),
            conventions=("rebased", "original"),
            doc="Non-Lie quasi-filiform of maximum length; generators e1, e2 in the rebased basis.",
        ),
        CatalogEntry(
            "M2", "nilradical", "M^{2,lambda}", "M2", 0,
            (_cont("lambda", "any rational; left symbolic when unbound"),),
            _nil_build(lambda t, n, p, c: _m2(t, n, p["lambda"])),
            doc="Generators e1, e_{n-1}; [e1, e_{n-1}] = lambda e_n.",
        ),
        CatalogEntry(
            "M3", "nilradical", "M^{3,alpha}", "M3", 0,
            (ParamSpec("alpha", _BIT, doc="alpha = 0 if n > 6; alpha in {0, 1} if n = 6",
                       choices_for=lambda n: _BIT if n == 6 else _BIT[:1]),),
            _nil_build(lambda t, n, p, c: _m3(t, n, p["alpha"], c)),
            conventions=("original", "rebased"),
            doc="The rebased basis exists only for alpha = 1 (n = 6) and is the default there.",
        ),
        CatalogEntry(
            "M4", "nilradical", "M^4", "M4", 0, (),
            _nil_build(lambda t, n, p, c: _m4(t, n)),
            doc="Generators e1, e_{n-1}; [e1, e_{n-1}] = e_n.",
        ),
        CatalogEntry(
            "RM4_1", "solvable", "R(M^4,1)(a_2,...,a_{n-1})", "M4", 1,
            (_cont("a{}", indices=lambda n: range(2, n)),),
            _solv_build(_rm4_1, 1),
            doc="The first nonzero a_i can be scaled to 1.",
        ),
    ]
    rm30 = {
        "R1": ("R_1(M^{3,0},1)", ()),
        "R2": (
            "R_2(M^{3,0},1)(alpha_i,beta_j)",
            (
                _cont("alpha1"),
                ParamSpec("alpha2", (Fraction(-1), Fraction(0), Fraction(1)), doc="alpha2 in {0, 1, -1}"),
                _cont("alpha3"),
                _cont("alpha4"),
                _cont("beta{}", indices=lambda n: range(1, n - 4)),
            ),
        ),
        "R3": ("R_3(M^{3,0},1)(alpha)", (_cont("alpha"),)),
        "R4": ("R_4(M^{3,0},1)", ()),
    }
    for v, (title, params) in rm30.items():
        out.append(CatalogEntry(f"RM30_1.{v}", "solvable", title, "M3", 1, params, _solv_build(_rm30_1(v), 1)))
    out.append(CatalogEntry("RM30_2", "solvable", "R(M^{3,0},2)", "M3", 2, (), _solv_build(_rm30_2, 2)))
    alpha = _cont("alpha")
    rm10 = {
        "R1": ("R_1(M^{1,0},1)(alpha_2,...,alpha_n)", (_cont("alpha{}", indices=lambda n: range(2, n + 1)),),
               "The first nonzero alpha_t can be scaled to 1."),
        "R2": ("R_2(M^{1,0},1)(alpha)", (alpha,), ""),
        "R3": ("R_3(M^{1,0},1)(alpha)", (alpha,), ""),
        "R4": ("R_4(M^{1,0},1)(alpha)", (alpha,), ""),
        "R5": ("R_5(M^{1,0},1)(alpha)", (alpha,), ""),
        "R6": ("R_6(M^{1,0},1)(alpha)", (alpha,), ""),
        "R7": (
            "R_7(M^{1,0},1)(alpha)",
            (_cont("alpha", "alpha not in {1, 2, 3-n, 4-n, 5-n}",
                   excluded=lambda n: frozenset(Fraction(v) for v in (1, 2, 3 - n, 4 - n, 5 - n))),),
            "",
        ),
    }
    for v, (title, params, doc) in rm10.items():
        out.append(CatalogEntry(f"RM10_1.{v}", "solvable", title, "M1", 1, params, _solv_build(_rm10_1(v), 1), doc=doc))
    pm1 = Fraction(-1)
    rm2 = {
        "R1": ("R_1(M^{2,lambda},1)", None,
               (ParamSpec("lambda", (Fraction(-1), Fraction(1)), doc="lambda in {-1, 1}"),),
               "Stated only for lambda in {-1, 1}; the domain is enforced as stated."),
        "R2": ("R_2(M^{2,-1},1)", pm1, (),
               "As tabulated, L(x, x, e1) = -e_n, so the table is not a Leibniz algebra; adding -e_n "
               "to [x, e1] repairs it.  The catalog keeps the table as tabulated."),
        "R3": ("R_3(M^{2,-1},1)", pm1, (), ""),
        "R4": ("R_4(M^{2,-1},1)(alpha)", pm1, (alpha,), ""),
        "R5": ("R_5(M^{2,lambda},1)", None,
               (_cont("lambda", "lambda not in {-1, 0, 1}",
                      excluded=lambda n: frozenset((Fraction(-1), Fraction(0), Fraction(1)))),),
               ""),
        "R6": ("R_6(M^{2,-1},1)(alpha_2,...,alpha_n)", pm1,
               (_cont("alpha{}", indices=lambda n: range(2, n + 1)),),
               "The first nonzero alpha_t can be scaled to 1."),
        "R7": ("R_7(M^{2,0},1)", ZERO, (), ""),
        "R8": ("R_8(M^{2,0},1)", ZERO, (), ""),
        "R9": ("R_9(M^{2,0},1)", ZERO, (), ""),
        "R10": ("R_10(M^{2,0},1)", ZERO, (), ""),
        "R11": ("R_11(M^{2,0},1)(alpha)", ZERO, (alpha,), ""),
        "R12": ("R_12(M^{2,0},1)(alpha_2,...,alpha_n)", ZERO,
                (_cont("alpha{}", indices=lambda n: range(2, n + 1)),),
                "The first nonzero alpha_t can be scaled to 1.  The scaling remark for this group names "
                "'R_6(M^{2,0},1)', which has no table of this shape; it is applied to this family."),
    }
    for v, (title, lam, params, doc) in rm2.items():
        out.append(
            CatalogEntry(f"RM2l_1.{v}", "solvable", title, "M2", 1, params, _solv_build(_rm2_1(v, lam), 1), doc=doc)
        )
    out += [
        CatalogEntry(
            "RM31_1", "solvable", "R(M^{3,1},1)", "M3", 1, (), _solv_build(_rm31_1, 1), fixed_n=6,
            doc="As tabulated, L(x, e1, e4) = -6 e5: e5 = [e2, e2] forces [x, e5] = 0, and then the e4 "
                "coefficient of [x, e4] must be 1, not -5.  No choice of [x, e_i], [x, x] completes this "
                "right multiplication to a Leibniz algebra.  The catalog keeps the table as tabulated.",
        ),
        CatalogEntry("RM10_2", "solvable", "R(M^{1,0},2)", "M1", 2, (), _solv_build(_rm10_2, 2)),
        CatalogEntry("RM20_2", "solvable", "R(M^{2,0},2)", "M2", 2, (), _solv_build(_rm20_2, 2)),
        CatalogEntry("RM2m1_2", "solvable", "R(M^{2,-1},2)", "M2", 2, (), _solv_build(_rm2m1_2, 2)),
    ]
    return out


_ENTRIES: tuple[CatalogEntry, ...] = tuple(_entries())
_BY_ID = {e.id: e for e in _ENTRIES}


def list_families(kind: str | None = None) -> list[CatalogEntry]:
    """All catalog entries in a stable order (nilradicals first)."""
    return [e for e in _ENTRIES if kind is None or e.kind == kind]


def get_entry(family: str) -> CatalogEntry:
    try:
        return _BY_ID[family]
    except KeyError:
        raise BadParam(f"unknown family {family!r}; known: {', '.join(_BY_ID)}") from None


def _resolve_params(entry: CatalogEntry, n: int, params: Mapping[str, object]) -> tuple[dict[str, Scalar], dict]:
    params = {k: to_scalar(v) for k, v in (params or {}).items()}
    known = set(entry.param_names(n))
    unknown = set(params) - known
    if unknown:
        raise BadParam(f"{entry.id} has no parameter(s) {sorted(unknown)}; expected {sorted(known) or 'none'}")
    values: dict[str, Scalar] = {}
    record: dict[str, Fraction | None] = {}
    for spec in entry.params:
        for name in spec.names(n):
            if name in params:
                value = params[name]
            elif spec.discrete:
                raise BadParam(f"{entry.id}: discrete parameter {name} must be given ({spec.doc})")
            else:
                value = var(name)
            spec.check(name, value, n)
            values[name] = value
            record[name] = None if isinstance(value, Poly) else value
    return values, record


def make(family: str, n: int, params: Mapping[str, object] | None = None, convention: str | None = None) -> Algebra:
    """Instantiate a catalog table with nilradical dimension *n*.

    >>> A = make("M1", 7, {"delta": 0})
    >>> A.dim, A.product(0, 0)[6]
    (7, Fraction(1, 1))
    """
    entry = get_entry(family)
    entry.check_dim(n)
    values, record = _resolve_params(entry, n, params or {})
    if family == "M3":
        alpha = values["alpha"]
        if convention is None:
            convention = "rebased" if alpha == 1 else "original"
        if convention == "rebased" and alpha != 1:
            raise BadParam("the rebased M3 basis is defined only for alpha = 1")
    convention = convention or entry.conventions[0]
    if convention not in entry.conventions:
        raise BadParam(f"{family} has conventions {entry.conventions}, not {convention!r}")
    table = entry.build(n, values, convention)
    dim = n + entry.s
    return from_table(dim, table, labels=entry.labels(n), params=record)


def rebase_link(family: str, n: int, params: Mapping[str, object] | None = None) -> tuple[Algebra, LinearMap, Algebra]:
    """``(original, P, rebased)`` with ``apply_basis_change(original, P) == rebased``.

    ``P`` lists the new basis vectors in terms of the old ones (row
    convention).  Families with a single convention get the identity.
    """
    entry = get_entry(family)
    if len(entry.conventions) == 1:
        A = make(family, n, params)
        return A, LinearMap.identity(A.dim), A
    original = make(family, n, params, convention="original")
    rebased = make(family, n, params, convention="rebased")
    rows = [[ZERO] * n for _ in range(n)]
    if family == "M1":
        # e1' = e1, e2' = e_{n-1}, e_i' = e_{i-1} (3 <= i <= n-1), e_n' = e_n
        rows[0][0] = ONE
        rows[1][n - 2] = ONE
        for i in range(3, n):
            rows[i - 1][i - 2] = ONE
        rows[n - 1][n - 1] = ONE
    else:
        # e1' = e1, e6' = e2, e_i' = e_{i+1} (2 <= i <= 5)
        rows[0][0] = ONE
        rows[5][1] = ONE
        for i in range(2, 6):
            rows[i - 1][i] = ONE
    return original, LinearMap(ExactMatrix.from_rows(rows, n)), rebased


def sample_bindings(entry: CatalogEntry, n: int, values=SAMPLE_VALUES) -> Iterator[dict[str, Fraction]]:
    """Rational instantiations covering every discrete branch.

    For each discrete choice combination: every continuous parameter set to
    each sample value in turn, plus one assignment cycling through the sample
    values.  Assignments hitting an excluded value are skipped.
    """
    discrete = [(name, spec) for spec in entry.params if spec.discrete for name in spec.names(n)]
    continuous = [(name, spec) for spec in entry.params if not spec.discrete for name in spec.names(n)]

    def combos(i: int):
        if i == len(discrete):
            yield {}
            return
        name, spec = discrete[i]
        for c in spec.choices_at(n):
            for rest in combos(i + 1):
                yield {name: c, **rest}

    seen = set()
    for d in combos(0):
        candidates = [{name: v for name, _ in continuous} for v in values]
        if len(continuous) > 1:
            candidates.append({name: values[(i + 1) % len(values)] for i, (name, _) in enumerate(continuous)})
        for c in candidates:
            binding = {**d, **c}
            ok = True
            for name, spec in continuous:
                try:
                    spec.check(name, binding[name], n)
                except BadParam:
                    ok = False
            key = tuple(sorted(binding.items()))
            if ok and key not in seen:
                seen.add(key)
                yield binding


def nilradical_subspace_indices(entry: CatalogEntry, n: int) -> tuple[list[int], list[int]]:
    """0-based indices of the nilradical basis and of the complement basis."""
    return list(range(n)), list(range(n, n + entry.s))


def rm10_r1_scaling_map(n: int, a1) -> LinearMap:
    """Diagonal change of ``RM10_1.R1``: ``e1 -> A1 e1``, ``e_i -> A1^{i-2} e_i``
    (``3 <= i <= n-1``), ``e_n -> A1^2 e_n``; ``e2`` and ``x`` are fixed."""
    a1 = to_scalar(a1)
    diag = [a1, ONE] + [a1 ** (i - 2) for i in range(3, n)] + [a1 ** 2, ONE]
    return LinearMap.diagonal(diag)


def rm10_r1_scaled_params(params: Mapping[str, object], n: int, a1) -> dict[str, Scalar]:
    """Parameters of ``RM10_1.R1`` after :func:`rm10_r1_scaling_map`:
    ``alpha2 / A1``, ``alpha_t / A1^{t-2}`` (``3 <= t <= n-1``), ``alpha_n / A1^2``."""
    a1 = to_scalar(a1)
    out: dict[str, Scalar] = {}
    for t in range(2, n + 1):
        power = 1 if t == 2 else 2 if t == n else t - 2
        out[f"alpha{t}"] = to_scalar(params[f"alpha{t}"]) / a1 ** power
    return out
