"""Batch verification of the catalogued classification claims.

Each suite produces a fixed, ordered list of checks; the report prints one
line per check with a short descriptive anchor naming the claim it tests.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

from .algebra import Algebra, LinearMap, Subspace, apply_basis_change, is_lie, verify_leibniz
from .catalog import (
    CatalogEntry,
    get_entry,
    list_families,
    make,
    rebase_link,
    rm10_r1_scaled_params,
    rm10_r1_scaling_map,
    sample_bindings,
)
from .derivations import (
    derivation_space,
    derivation_template,
    match_derivation_pattern,
    nil_independence_rank,
    nil_independent_pair,
    verify_nilradical_candidate,
)
from .errors import CapExceeded, LeibnizError
from .gradation import search_max_length_gradation, verify_gradation
from .invariants import Inconclusive, distinguish, profile
from .linalg import ExactMatrix, unit_vector
from .scalars import ONE, ZERO, Poly, format_scalar
from .structure import is_nilpotent, is_quasi_filiform, is_solvable, lower_central_series, series_dims
from .workbench import build_generic_extension, run_script

__all__ = ["Check", "HarnessReport", "SUITES", "run_harness", "suite_checks", "M11_NONEXISTENCE_SCRIPT"]

DIMS = (6, 7, 8)


@dataclass(frozen=True)
class Check:
    suite: str
    claim: str
    anchor: str
    passed: bool
    detail: str = ""
    informational: bool = False

    def line(self) -> str:
        status = "INFO" if self.informational else ("PASS" if self.passed else "FAIL")
        text = f"{status}  {self.suite}: {self.claim}  [{self.anchor}]"
        if self.detail and (not self.passed or self.informational):
            text += f"\n      {self.detail}"
        return text


@dataclass(frozen=True)
class HarnessReport:
    suite: str
    checks: tuple[Check, ...] = ()
    exit_code: int = 0
    text: str = field(default="", repr=False)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]


def _check(suite, claim, anchor, fn: Callable[[], tuple[bool, str]], informational=False) -> Check:
    try:
        ok, detail = fn()
    except (LeibnizError, ValueError, ZeroDivisionError) as exc:
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return Check(suite, claim, anchor, ok, detail, informational)


def _branches(entry: CatalogEntry, n: int) -> Iterator[dict[str, Fraction]]:
    """Every combination of discrete parameter values; continuous ones stay symbolic."""
    discrete = [(name, spec.choices_at(n)) for spec in entry.params if spec.discrete for name in spec.names(n)]
    names = [d[0] for d in discrete]
    for values in itertools.product(*(d[1] for d in discrete)):
        yield dict(zip(names, values))


def _dims(entry: CatalogEntry) -> tuple[int, ...]:
    return (entry.fixed_n,) if entry.fixed_n else DIMS


def _fmt_binding(b) -> str:
    return " ".join(f"{k}={format_scalar(v)}" for k, v in b.items()) or "no parameters"


def _witness(A: Algebra) -> tuple[bool, str]:
    w = verify_leibniz(A)
    if w is None:
        return True, ""
    res = " + ".join(
        f"({format_scalar(c)})*{A.labels[k]}" for k, c in enumerate(w.residual) if isinstance(c, Poly) or c != 0
    )
    return False, f"L({A.labels[w.i - 1]}, {A.labels[w.j - 1]}, {A.labels[w.k - 1]}) = {res}"


def _nil_anchor(entry: CatalogEntry) -> str:
    if entry.kind == "nilradical":
        return "nilradical family tables"
    family = re.sub(r"^R_\d+", "R", entry.title.split(")")[0] + ")")
    return f"classification of {family}"


# ---------------------------------------------------------------------------
# suites


def tables_suite() -> list[Check]:
    out = []
    for entry in list_families():
        for n in _dims(entry):
            for branch in _branches(entry, n):
                conventions = entry.conventions
                if entry.id == "M3":
                    conventions = ("rebased", "original") if branch["alpha"] == 1 else ("original",)
                for conv in conventions:
                    label = f"{entry.id} n={n} {_fmt_binding(branch)}"
                    if len(conventions) > 1:
                        label += f" ({conv} basis)"
                    out.append(
                        _check(
                            "tables",
                            f"{label} satisfies the Leibniz identity",
                            _nil_anchor(entry),
                            lambda e=entry, n=n, b=branch, c=conv: _witness(make(e.id, n, b, convention=c)),
                        )
                    )
    for family, n, params in (("M1", 7, {"delta": 0}), ("M1", 7, {"delta": 1}), ("M3", 6, {"alpha": 1})):

        def rebase(family=family, n=n, params=params):
            original, P, rebased = rebase_link(family, n, params)
            return apply_basis_change(original, P) == rebased, "tables differ after the change of basis"

        out.append(
            _check("tables", f"{family} n={n} {_fmt_binding(params)} rebased table from the original one",
                   "rebased working tables", rebase)
        )

    def scaling():
        n, a1 = 7, 2
        entry = get_entry("RM10_1.R1")
        for b in sample_bindings(entry, n):
            moved = apply_basis_change(make(entry.id, n, b), rm10_r1_scaling_map(n, a1))
            if moved != make(entry.id, n, rm10_r1_scaled_params(b, n, a1)):
                return False, f"scaling by A1={a1} does not act on {_fmt_binding(b)} as stated"
        return True, ""

    out.append(_check("tables", "RM10_1.R1 n=7 scaling e1 -> 2 e1 divides alpha_t by 2^(t-2), alpha_2 by 2, alpha_n by 4",
                      "R_1(M^{1,0},1) scaling orbit", scaling))
    return out


def series_suite() -> list[Check]:
    out = []
    expected = (
        ("M1", 7, {"delta": 0}, (7, 5, 3, 2, 1, 0)),
        ("M3", 6, {"alpha": 1}, (6, 4, 2, 1, 0)),
        ("M4", 7, {}, (7, 5, 3, 2, 1, 0)),
    )
    for family, n, params, dims in expected:

        def lcs(family=family, n=n, params=params, dims=dims):
            A = make(family, n, params)
            got = series_dims(lower_central_series(A))
            ok = got == dims and is_quasi_filiform(A)
            return ok, f"lower central series dims {got}, expected {dims}"

        out.append(_check("series", f"{family} n={n} {_fmt_binding(params)} lower central series {dims}",
                          "quasi-filiform definition", lcs))
    for entry in list_families("nilradical"):
        for n in _dims(entry):
            for branch in sample_bindings(entry, n):

                def nil(e=entry, n=n, b=branch):
                    A = make(e.id, n, b)
                    facts = {"nilpotent": is_nilpotent(A), "non-Lie": not is_lie(A), "quasi-filiform": is_quasi_filiform(A)}
                    bad = [k for k, v in facts.items() if not v]
                    return not bad, "fails: " + ", ".join(bad)

                out.append(_check("series", f"{entry.id} n={n} {_fmt_binding(branch)} is nilpotent, non-Lie, quasi-filiform",
                                  "nilradical family tables", nil))
    for entry in list_families("solvable"):
        n = entry.sample_n()

        def solv(e=entry, n=n):
            for b in sample_bindings(e, n):
                A = make(e.id, n, b)
                if not is_solvable(A) or is_nilpotent(A):
                    return False, f"{_fmt_binding(b)} is not solvable and non-nilpotent"
            return True, ""

        out.append(_check("series", f"{entry.id} n={n} sample instances are solvable and not nilpotent",
                          "solvable non-nilpotent extensions", solv))
    return out


def _diag_direction(pattern: str, n: int, name: str, **kw):
    T, names = derivation_template(pattern, n, **kw)
    bind = {v: (ONE if v == name else ZERO) for v in names}
    rows = [[x.subs(bind) if isinstance(x, Poly) else x for x in T.image(i)] for i in range(n)]
    return LinearMap(ExactMatrix.from_rows(rows, n))


def derivations_suite() -> list[Check]:
    out = []
    cases = (
        ("M1", 7, {"delta": 0}, "M1", {"delta": 0}, 10),
        ("M1", 7, {"delta": 1}, "M1", {"delta": 1}, 9),
        ("M2", 7, {"lambda": 0}, "M2", {"lam": 0}, 11),
        ("M2", 7, {"lambda": 1}, "M2", {"lam": 1}, 10),
        ("M3", 6, {"alpha": 1}, "M31", {}, 9),
    )
    for family, n, params, pattern, kw, dim in cases:

        def der(family=family, n=n, params=params, pattern=pattern, kw=kw, dim=dim):
            A = make(family, n, params)
            got = derivation_space(A).dim
            match = match_derivation_pattern(A, pattern, **kw)
            return got == dim and match.passed, f"dim Der = {got} (expected {dim}); {match.report}"

        out.append(_check("derivations", f"{family} n={n} {_fmt_binding(params)} has dim Der = {dim} and the {pattern} matrix form",
                          "derivation matrix forms", der))
    pairs = (
        ("M1", 7, {"delta": 0}, ("a1", "b2")),
        ("M2", 7, {"lam": 0}, ("a1", "b6")),
        ("M2", 7, {"lam": 1}, ("a1", "b6")),
    )
    for pattern, n, kw, (u, v) in pairs:

        def pair(pattern=pattern, n=n, kw=kw, u=u, v=v):
            D1, D2 = _diag_direction(pattern, n, u, **kw), _diag_direction(pattern, n, v, **kw)
            return nil_independent_pair(D1, D2), f"a combination of the {u} and {v} directions is nilpotent"

        out.append(_check("derivations", f"{pattern} n={n} {_fmt_binding(kw)}: the {u} and {v} derivations are nil-independent",
                          "complement dimension bound", pair))
    for family, n, params in (("M1", 7, {"delta": 1}), ("M3", 6, {"alpha": 1})):

        def rank(family=family, n=n, params=params):
            r = nil_independence_rank(list(derivation_space(make(family, n, params)).basis))
            return r == 1, f"largest nil-independent set has size {r}"

        out.append(_check("derivations", f"{family} n={n} {_fmt_binding(params)}: no two nil-independent derivations",
                          "complement dimension bound", rank))
    return out


def gradations_suite() -> list[Check]:
    out = []
    for family, n, params in (
        ("M1", 7, {"delta": 0}),
        ("M2", 7, {"lambda": 0}),
        ("M2", 7, {"lambda": 1}),
        ("M3", 6, {"alpha": 1}),
        ("M4", 7, {}),
    ):

        def grade(family=family, n=n, params=params):
            A = make(family, n, params)
            g = search_max_length_gradation(A, 2 * n)
            if g is None:
                return False, "no gradation of maximum length found"
            verdict = verify_gradation(A, g)
            return bool(verdict) and verdict.length == n, f"weights {g.weights}: {verdict}"

        out.append(_check("gradations", f"{family} n={n} {_fmt_binding(params)} has a connected gradation of length {n}",
                          "maximum-length gradations", grade))
    return out


M11_NONEXISTENCE_SCRIPT = """\
# no solvable extension has nilradical M^{1,1}
build M1 n=7 delta=1 s=1
pin a1 != 0
residual e1 x e1
solve
residual e2 x e2
solve
residual x e1 e2
solve
expect contradiction
"""


def extensions_suite() -> list[Check]:
    out = []

    def replay():
        r = run_script(M11_NONEXISTENCE_SCRIPT)
        bound = r.session.extension.bindings.get("a1") if r.session.extension else None
        ok = r.ok and r.contradiction is not None and bound == 0
        return ok, r.contradiction or "no contradiction reached"

    out.append(_check("extensions", "M1 delta=1 n=7: the three Leibniz triples force a1 = 0 against a1 != 0",
                      "non-existence over M^{1,1}", replay))

    def cap():
        try:
            build_generic_extension(make("M1", 7, {"delta": 1}), "M1", 2)
        except CapExceeded:
            return True, ""
        return False, "a two-dimensional complement was accepted"

    out.append(_check("extensions", "M1 delta=1 admits no two-dimensional complement",
                      "complement dimension bound", cap))
    for entry in list_families("solvable"):
        for n in _dims(entry):

            def cert(e=entry, n=n):
                N = Subspace.coordinate(n + e.s, range(n))
                comp = [unit_vector(n + e.s, n + j) for j in range(e.s)]
                for b in sample_bindings(e, n):
                    res = verify_nilradical_candidate(make(e.id, n, b), N, comp)
                    if not res:
                        return False, f"{_fmt_binding(b)}: {res.clause}: {res.detail}"
                return True, ""

            out.append(_check("extensions", f"{entry.id} n={n} sample instances have nilradical span(e1..en)",
                              "nilradical and nil-independent complement", cert))
    return out


def _profile_samples() -> list[tuple[str, Algebra]]:
    out = []
    for entry in list_families("solvable"):
        n = entry.sample_n()
        for b in sample_bindings(entry, n):
            out.append((f"{entry.id}({_fmt_binding(b)})", make(entry.id, n, b)))
    return out


def profiles_suite() -> list[Check]:
    out = []
    nil = {
        "M1 delta=0": ("M1", {"delta": 0}),
        "M2 lambda=0": ("M2", {"lambda": 0}),
        "M3 alpha=1": ("M3", {"alpha": 1}),
        "M4": ("M4", {}),
    }
    for (la, (fa, pa)), (lb, (fb, pb)) in itertools.combinations(nil.items(), 2):

        def dist(fa=fa, pa=pa, fb=fb, pb=pb):
            cert = distinguish(make(fa, 6, pa), make(fb, 6, pb))
            return not isinstance(cert, Inconclusive), str(cert)

        out.append(_check("profiles", f"{la} and {lb} at n=6 are distinguished by invariants",
                          "nilradical families distinct", dist))
    samples = _profile_samples()
    profiles = {}
    errors = []
    for label, A in samples:
        try:
            profiles[label] = profile(A)
        except LeibnizError as exc:
            errors.append(f"{label}: {exc}")
    out.append(Check("profiles", f"profiles of {len(samples)} solvable sample instances computed",
                     "solvable profiles computable", not errors, "; ".join(errors)))
    labels = list(profiles)
    for a, b in itertools.combinations(labels, 2):
        if isinstance(distinguish(profiles[a], profiles[b]), Inconclusive):
            out.append(Check("profiles", f"{a} vs {b}", "invariants inconclusive", True,
                             "equal profiles: " + str(profiles[a]), informational=True))
    return out


SUITES: dict[str, Callable[[], list[Check]]] = {
    "tables": tables_suite,
    "series": series_suite,
    "derivations": derivations_suite,
    "gradations": gradations_suite,
    "extensions": extensions_suite,
    "profiles": profiles_suite,
}


def suite_checks(suite: str) -> list[Check]:
    if suite == "all":
        return [c for name in SUITES for c in SUITES[name]()]
    return SUITES[suite]()


def run_harness(suite: str) -> HarnessReport:
    """Run a suite (or ``all``); exit code 0 if every check passes, 1 otherwise, 2 for a bad name."""
    if suite not in SUITES and suite != "all":
        names = ", ".join([*SUITES, "all"])
        return HarnessReport(suite, (), 2, f"unknown suite {suite!r}; choose one of {names}\n")
    checks = tuple(suite_checks(suite))
    failed = [c for c in checks if not c.passed]
    counted = [c for c in checks if not c.informational]
    lines = [c.line() for c in checks]
    lines.append(f"{len(counted) - len(failed)}/{len(counted)} checks passed in suite {suite!r}")
    if failed:
        first = failed[0]
        lines.append(f"first failure: {first.claim}: {first.detail}")
    return HarnessReport(suite, checks, 1 if failed else 0, "\n".join(lines) + "\n")
