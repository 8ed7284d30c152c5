from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from helpers import invertible_maps
from leibniz.algebra import LinearMap, Subspace, abelian, apply_basis_change
from leibniz.catalog import make
from leibniz.derivations import (
    derivation_space,
    derivation_template,
    is_derivation,
    is_nilpotent_map,
    match_derivation_pattern,
    nil_independence_rank,
    nil_independent,
    nil_independent_pair,
    right_mult_restriction,
    right_multiplication,
    verify_nilradical_candidate,
)
from leibniz.errors import NotInvariant, UnknownPattern
from leibniz.linalg import ExactMatrix, unit_vector
from leibniz.scalars import ONE, ZERO, Poly


def direction(pattern, n, name, **kw) -> LinearMap:
    """The template with one free parameter set to 1 and the rest to 0."""
    T, names = derivation_template(pattern, n, **kw)
    bind = {v: (ONE if v == name else ZERO) for v in names}
    rows = [[x.subs(bind) if isinstance(x, Poly) else x for x in T.image(i)] for i in range(n)]
    return LinearMap(ExactMatrix.from_rows(rows, n))


CASES = [
    ("M1", 7, {"delta": 0}, "M1", {"delta": 0}, 10),
    ("M1", 7, {"delta": 1}, "M1", {"delta": 1}, 9),
    ("M2", 7, {"lambda": 0}, "M2", {"lam": 0}, 11),
    ("M2", 7, {"lambda": 1}, "M2", {"lam": 1}, 10),
    ("M3", 6, {"alpha": 1}, "M31", {}, 9),
]


@pytest.mark.parametrize("family, n, params, pattern, kw, dim", CASES)
def test_derivation_dimension_and_pattern(family, n, params, pattern, kw, dim):
    A = make(family, n, params)
    der = derivation_space(A)
    assert der.dim == dim
    assert all(is_derivation(A, D) for D in der.basis)
    match = match_derivation_pattern(A, pattern, **kw)
    assert match.passed and match.computed_dim == match.pattern_dim == dim


@pytest.mark.parametrize("n", [6, 8])
@pytest.mark.parametrize("family, params, pattern, kw", [
    ("M1", {"delta": 0}, "M1", {"delta": 0}),
    ("M1", {"delta": 1}, "M1", {"delta": 1}),
    ("M2", {"lambda": -1}, "M2", {"lam": -1}),
    ("M2", {"lambda": Fraction(1, 2)}, "M2", {"lam": Fraction(1, 2)}),
])
def test_patterns_at_other_dimensions(n, family, params, pattern, kw):
    assert match_derivation_pattern(make(family, n, params), pattern, **kw).passed


def test_pattern_mismatch_is_reported():
    A = make("M1", 7, {"delta": 1})
    match = match_derivation_pattern(A, "M1", delta=0)
    assert not match.passed and "outside" in match.report
    with pytest.raises(UnknownPattern):
        match_derivation_pattern(A, "M5")


def test_abelian_derivations_are_everything():
    assert derivation_space(abelian(2)).dim == 4


@settings(max_examples=15, deadline=None)
@given(invertible_maps(6))
def test_der_dim_basis_invariant(P):
    A = make("M3", 6, {"alpha": 1})
    assert derivation_space(apply_basis_change(A, P)).dim == 9


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=7, max_size=7))
def test_right_multiplications_are_derivations(x):
    A = make("M2", 7, {"lambda": 2})
    assert is_derivation(A, right_multiplication(A, x))


def test_right_mult_restriction_r7():
    alpha = Fraction(1, 2)
    R = make("RM10_1.R7", 7, {"alpha": alpha})
    D = right_mult_restriction(R, unit_vector(8, 7), Subspace.coordinate(8, range(7)))
    diag = [1] + [i - 2 + alpha for i in range(2, 7)] + [2]
    assert D == LinearMap.diagonal(diag)


def test_right_mult_restriction_second_generator():
    R = make("RM10_2", 7)
    D = right_mult_restriction(R, unit_vector(9, 8), Subspace.coordinate(9, range(7)))
    assert D == LinearMap.diagonal([0, 1, 1, 1, 1, 1, 0])


def test_right_mult_restriction_zero_and_not_invariant():
    A = abelian(3)
    D = right_mult_restriction(A, unit_vector(3, 2), Subspace.coordinate(3, [0, 1]))
    assert D == LinearMap.diagonal([0, 0])
    R = make("RM10_1.R7", 7, {"alpha": 0})
    with pytest.raises(NotInvariant):
        right_mult_restriction(R, unit_vector(8, 0), Subspace.coordinate(8, [0]))


def test_is_nilpotent_map():
    assert is_nilpotent_map(LinearMap.from_rows([[0, 1, 2], [0, 0, 3], [0, 0, 0]]))
    assert not is_nilpotent_map(LinearMap.identity(3))
    A = make("M1", 7, {"delta": 0})
    assert is_nilpotent_map(right_multiplication(A, unit_vector(7, 0)))


def test_nil_independent_pair_examples():
    R = make("RM20_2", 7)
    N = Subspace.coordinate(9, range(7))
    D1 = right_mult_restriction(R, unit_vector(9, 7), N)
    D2 = right_mult_restriction(R, unit_vector(9, 8), N)
    assert nil_independent_pair(D1, D2)
    strict = LinearMap.from_rows([[0, 1], [0, 0]])
    assert not nil_independent_pair(strict, LinearMap.identity(2))
    assert nil_independent([LinearMap.diagonal(range(1, 5))])


def test_proportional_maps_are_dependent():
    D = LinearMap.diagonal([1, 2, 3])
    assert not nil_independent_pair(D, LinearMap(D.matrix.scale(-2)))


def test_complement_caps():
    assert nil_independent_pair(direction("M1", 7, "a1"), direction("M1", 7, "b2"))
    assert nil_independent_pair(direction("M2", 7, "a1", lam=1), direction("M2", 7, "b6", lam=1))
    for family, n, params in (("M1", 7, {"delta": 1}), ("M3", 6, {"alpha": 1})):
        assert nil_independence_rank(list(derivation_space(make(family, n, params)).basis)) == 1
    assert nil_independence_rank(list(derivation_space(make("M1", 7, {"delta": 0})).basis)) == 2


@pytest.mark.parametrize(
    "family, n, params, s",
    [
        ("RM10_1.R2", 7, {"alpha": 1}, 1),
        ("RM2m1_2", 7, {}, 2),
        ("RM4_1", 6, {"a2": 1, "a3": 0, "a4": 0, "a5": 0}, 1),
    ],
)
def test_nilradical_candidates_pass(family, n, params, s):
    R = make(family, n, params)
    check = verify_nilradical_candidate(R, Subspace.coordinate(n + s, range(n)), [unit_vector(n + s, n + j) for j in range(s)])
    assert check, check.detail


def test_nilpotent_algebra_is_its_own_candidate():
    A = make("M4", 6)
    assert verify_nilradical_candidate(A, Subspace.full(6), [])


def test_candidate_failures_name_the_clause():
    R = make("RM10_1.R7", 7, {"alpha": 0})
    N = Subspace.coordinate(8, range(7))
    small = verify_nilradical_candidate(R, Subspace.coordinate(8, range(6)), [unit_vector(8, 7)])
    assert not small and small.clause == "complement"
    nil = make("M1", 8, {"delta": 0})
    nilpotent_action = verify_nilradical_candidate(nil, Subspace.coordinate(8, range(1, 8)), [unit_vector(8, 0)])
    assert not nilpotent_action and nilpotent_action.clause in ("ideal", "non-nilpotent")
    assert verify_nilradical_candidate(R, N, [unit_vector(8, 7)])


def test_non_nilpotency_matches_diagonal_parameters():
    # for M^{1,0}, R_x restricted to N is nilpotent exactly when a1 = b2 = 0
    n = 7
    T, names = derivation_template("M1", n, delta=0)
    for a1, b2, nilpotent in ((0, 0, True), (1, 0, False), (0, 1, False), (2, -1, False)):
        bind = {v: Fraction(0) for v in names} | {"a1": Fraction(a1), "b2": Fraction(b2), "b3": Fraction(1)}
        rows = [[x.subs(bind) if isinstance(x, Poly) else x for x in T.image(i)] for i in range(n)]
        assert is_nilpotent_map(LinearMap(ExactMatrix.from_rows(rows, n))) is nilpotent
