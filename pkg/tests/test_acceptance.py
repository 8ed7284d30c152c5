"""Acceptance gate: eleven end-to-end criteria, each reported as one PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -s`` to see the lines, or execute this
file directly for the report alone.  Everything is exact; there is no
tolerance anywhere.
"""

from __future__ import annotations

import random
import sys
from fractions import Fraction
from itertools import combinations

import pytest

from leibniz.algebra import LinearMap, Subspace, apply_basis_change, verify_leibniz
from leibniz.catalog import (
    get_entry,
    list_families,
    make,
    rebase_link,
    rm10_r1_scaled_params,
    rm10_r1_scaling_map,
    sample_bindings,
)
from leibniz.derivations import (
    derivation_space,
    derivation_template,
    match_derivation_pattern,
    nil_independence_rank,
    nil_independent_pair,
    verify_nilradical_candidate,
)
from leibniz.gradation import search_max_length_gradation, verify_gradation
from leibniz.harness import M11_NONEXISTENCE_SCRIPT, run_harness
from leibniz.invariants import NonIsomorphic, distinguish
from leibniz.linalg import ExactMatrix, unit_vector
from leibniz.scalars import ONE, ZERO, Poly
from leibniz.serialization import parse, serialize
from leibniz.structure import lower_central_series, series_dims
from leibniz.workbench import run_script

DIMS = (6, 7, 8)


def _dims(entry):
    return (entry.fixed_n,) if entry.fixed_n else DIMS


def _discrete_branches(entry, n):
    branches = [{}]
    for spec in entry.params:
        if spec.discrete:
            for name in spec.names(n):
                branches = [{**b, name: c} for b in branches for c in spec.choices_at(n)]
    return branches


def _direction(pattern, n, name, **kw) -> LinearMap:
    T, names = derivation_template(pattern, n, **kw)
    bind = {v: (ONE if v == name else ZERO) for v in names}
    rows = [[x.subs(bind) if isinstance(x, Poly) else x for x in T.image(i)] for i in range(n)]
    return LinearMap(ExactMatrix.from_rows(rows, n))


# ---------------------------------------------------------------------------
# criteria: each returns (passed, detail)


def criterion_1():
    """Every table, every discrete branch, free parameters symbolic, satisfies the Leibniz identity."""
    checked, failures = 0, []
    for entry in list_families():
        for n in _dims(entry):
            for branch in _discrete_branches(entry, n):
                for conv in entry.conventions:
                    if entry.id == "M3" and conv == "rebased" and branch.get("alpha") != 1:
                        continue
                    A = make(entry.id, n, branch, convention=conv)
                    checked += 1
                    w = verify_leibniz(A)
                    if w is not None:
                        lab = A.labels
                        res = {lab[k]: str(c) for k, c in enumerate(w.residual) if c != 0}
                        failures.append(f"{entry.id} n={n}: L({lab[w.i - 1]},{lab[w.j - 1]},{lab[w.k - 1]}) = {res}")
    detail = f"{checked - len(failures)}/{checked} tables pass"
    if failures:
        detail += "; residuals: " + "; ".join(failures)
    return not failures, detail


def criterion_2():
    cases = (("M1", 7, {"delta": 0}, (7, 5, 3, 2, 1, 0)), ("M3", 6, {"alpha": 1}, (6, 4, 2, 1, 0)),
             ("M4", 7, {}, (7, 5, 3, 2, 1, 0)))
    out = []
    for family, n, params, want in cases:
        got = series_dims(lower_central_series(make(family, n, params)))
        # L^k is the k-th term (1-based): L^{n-2} != 0 and L^{n-1} = 0
        qf = got[n - 3] != 0 and (len(got) < n - 1 or got[n - 2] == 0)
        out.append((got == want and qf, f"{family}({n}) {got}"))
    return all(ok for ok, _ in out), ", ".join(d for _, d in out)


def criterion_3():
    cases = (
        ("M1", 7, {"delta": 0}, "M1", {"delta": 0}, 10),
        ("M1", 7, {"delta": 1}, "M1", {"delta": 1}, 9),
        ("M2", 7, {"lambda": 0}, "M2", {"lam": 0}, 11),
        ("M2", 7, {"lambda": 1}, "M2", {"lam": 1}, 10),
        ("M3", 6, {"alpha": 1}, "M31", {}, 9),
    )
    ok, parts = True, []
    for family, n, params, pattern, kw, want in cases:
        A = make(family, n, params)
        dim = derivation_space(A).dim
        match = match_derivation_pattern(A, pattern, **kw)
        good = dim == want and match.passed and match.pattern_dim == want
        ok &= good
        parts.append(f"{family}{params} dim {dim} {'Pass' if match.passed else 'Mismatch'}")
    return ok, "; ".join(parts)


def criterion_4():
    pairs = [
        ("M1", {"delta": 0}, "a1", "b2"),
        ("M2", {"lam": 0}, "a1", "b6"),
        ("M2", {"lam": 1}, "a1", "b6"),
        ("M2", {"lam": -1}, "a1", "b6"),
    ]
    parts, ok = [], True
    for pattern, kw, u, v in pairs:
        good = nil_independent_pair(_direction(pattern, 7, u, **kw), _direction(pattern, 7, v, **kw))
        ok &= good
        parts.append(f"{pattern}{kw} ({u},{v}) nil-independent={good}")
    for family, n, params in (("M1", 7, {"delta": 1}), ("M3", 6, {"alpha": 1})):
        r = nil_independence_rank(list(derivation_space(make(family, n, params)).basis))
        ok &= r == 1
        parts.append(f"{family}{params} max nil-independent set {r}")
    return ok, "; ".join(parts)


def criterion_5():
    cases = (("M1", 7, {"delta": 0}), ("M2", 7, {"lambda": 0}), ("M2", 7, {"lambda": 1}),
             ("M3", 6, {"alpha": 1}), ("M4", 7, {}))
    ok, parts = True, []
    for family, n, params in cases:
        A = make(family, n, params)
        g = search_max_length_gradation(A, 2 * n)
        good = g is not None and g.length == n and bool(verify_gradation(A, g))
        ok &= good
        parts.append(f"{family}({n}) {g.weights if g else None}")
    return ok, "; ".join(parts)


def criterion_6():
    checked, failures = 0, []
    for entry in list_families("solvable"):
        for n in _dims(entry):
            dim = n + entry.s
            N = Subspace.coordinate(dim, range(n))
            comp = [unit_vector(dim, n + j) for j in range(entry.s)]
            for binding in sample_bindings(entry, n):
                checked += 1
                res = verify_nilradical_candidate(make(entry.id, n, binding), N, comp)
                if not res:
                    failures.append(f"{entry.id} n={n} {binding}: {res.clause}")
    return not failures, f"{checked - len(failures)}/{checked} instances certified" + (
        "; " + "; ".join(failures[:5]) if failures else "")


def criterion_7():
    result = run_script(M11_NONEXISTENCE_SCRIPT)
    session = result.session
    a1_zero = session.extension.bindings.get("a1") == 0
    return (result.ok and result.contradiction is not None and a1_zero,
            f"contradiction: {result.contradiction}; a1 bound to {session.extension.bindings.get('a1')}")


def criterion_8():
    cases = [("M1", n, {"delta": d}) for n in DIMS for d in (0, 1)] + [("M3", 6, {"alpha": 1})]
    ok = True
    for family, n, params in cases:
        original, P, rebased = rebase_link(family, n, params)
        ok &= apply_basis_change(original, P) == rebased
    return ok, f"{len(cases)} rebasings reproduce the working tables entry-exactly"


def criterion_9():
    n, a1 = 7, Fraction(2)
    entry = get_entry("RM10_1.R1")
    count, ok = 0, True
    for binding in sample_bindings(entry, n):
        A = make(entry.id, n, binding)
        scaled = apply_basis_change(A, rm10_r1_scaling_map(n, a1))
        want = rm10_r1_scaled_params(binding, n, a1)
        expected = {f"alpha{t}": binding[f"alpha{t}"] / a1 ** (1 if t == 2 else 2 if t == n else t - 2)
                    for t in range(2, n + 1)}
        ok &= want == expected and scaled == make(entry.id, n, want)
        count += 1
    return ok, f"{count} sample parameter vectors scale as alpha_t / 2^(t-2), alpha_2 / 2, alpha_n / 4"


def criterion_10():
    nils = {"M10": ("M1", {"delta": 0}), "M20": ("M2", {"lambda": 0}), "M31": ("M3", {"alpha": 1}), "M4": ("M4", {})}
    parts, ok = [], True
    for a, b in combinations(nils, 2):
        cert = distinguish(make(nils[a][0], 6, nils[a][1]), make(nils[b][0], 6, nils[b][1]))
        ok &= isinstance(cert, NonIsomorphic)
        parts.append(f"{a}/{b}: {cert}")
    report = run_harness("profiles")
    info = sum(1 for c in report.checks if c.informational)
    ok &= report.exit_code == 0
    parts.append(f"profiles suite exit {report.exit_code}, {info} Inconclusive pairs listed")
    return ok, "; ".join(parts)


def criterion_11():
    rng = random.Random(20240611)
    entries = list_families()
    failures = 0
    for _ in range(100):
        entry = rng.choice(entries)
        n = entry.fixed_n or rng.choice(DIMS)
        binding = dict(rng.choice(list(sample_bindings(entry, n))))
        for name in binding:
            spec = next(s for s in entry.params if name in s.names(n))
            if not spec.discrete:
                trial = Fraction(rng.randint(-50, 50), rng.randint(1, 12))
                try:
                    spec.check(name, trial, n)
                    binding[name] = trial
                except ValueError:
                    pass
        A = make(entry.id, n, binding)
        B = parse(serialize(A))
        if not (B == A and B.params == A.params and B.labels == A.labels):
            failures += 1
    return failures == 0, f"{100 - failures}/100 randomized instantiations round-trip entry-exactly"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11]


def _line(k: int, ok: bool, detail: str) -> str:
    return f"{'PASS' if ok else 'FAIL'} criterion {k}: {detail}"


@pytest.mark.parametrize("k", range(1, len(CRITERIA) + 1))
def test_criterion(k):
    ok, detail = CRITERIA[k - 1]()
    print(_line(k, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    results = [(k, *fn()) for k, fn in enumerate(CRITERIA, start=1)]
    for k, ok, detail in results:
        print(_line(k, ok, detail))
    sys.exit(0 if all(ok for _, ok, _ in results) else 1)
