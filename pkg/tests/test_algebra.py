from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from helpers import invertible_maps
from leibniz.algebra import (
    Algebra,
    LinearMap,
    Subspace,
    abelian,
    apply_basis_change,
    bracket,
    from_table,
    is_lie,
    leibniz_residual,
    product_subspace,
    verify_leibniz,
)
from leibniz.catalog import make
from leibniz.errors import DimensionMismatch, SingularMap
from leibniz.linalg import unit_vector, zero_vector


def e(n, i):
    return unit_vector(n, i - 1)


CROSS = from_table(3, {(1, 2): {3: 1}, (2, 1): {3: -1}, (2, 3): {1: 1}, (3, 2): {1: -1}, (3, 1): {2: 1}, (1, 3): {2: -1}})


def corrupted_m10() -> Algebra:
    A = make("M1", 7, {"delta": 0})
    prods = dict(A.products)
    prods[(1, 1)] = e(7, 3)
    return Algebra(7, prods)


def test_bracket_on_catalog_tables():
    A = make("M1", 7, {"delta": 0})
    assert bracket(A, e(7, 2), e(7, 1)) == e(7, 3)
    B = make("M3", 6, {"alpha": 1})
    assert bracket(B, e(6, 1), e(6, 2)) == tuple(-x for x in e(6, 3))


def test_bracket_zero_and_dimension_check():
    A = make("M4", 6)
    assert bracket(A, zero_vector(6), e(6, 1)) == zero_vector(6)
    with pytest.raises(DimensionMismatch):
        bracket(A, e(5, 1), e(6, 1))


def test_residual_examples():
    A = make("M1", 7, {"delta": 0})
    assert leibniz_residual(A, e(7, 2), e(7, 1), e(7, 1)) == zero_vector(7)
    assert leibniz_residual(A, zero_vector(7), e(7, 1), e(7, 2)) == zero_vector(7)
    bad = corrupted_m10()
    assert leibniz_residual(bad, e(7, 2), e(7, 2), e(7, 1)) == tuple(-x for x in e(7, 4))


def test_verify_leibniz_reports_first_lexicographic_witness():
    w = verify_leibniz(corrupted_m10())
    # (2,1,2) precedes (2,2,1): [e2,[e1,e2]] - [[e2,e1],e2] + [[e2,e2],e1] = 0 - 0 + e4
    assert (w.i, w.j, w.k) == (2, 1, 2)
    assert w.residual == e(7, 4)


@pytest.mark.parametrize("A", [CROSS, abelian(4), make("M1", 7, {"delta": 0}), make("M4", 6)])
def test_verify_leibniz_passes(A):
    assert verify_leibniz(A) is None


@pytest.mark.parametrize(
    "A, expected",
    [(make("M1", 7, {"delta": 0}), False), (CROSS, True), (abelian(3), True)],
)
def test_is_lie(A, expected):
    assert is_lie(A) is expected


def test_basis_change_identity_and_singular():
    A = make("M2", 6, {"lambda": 1})
    assert apply_basis_change(A, LinearMap.identity(6)) == A
    with pytest.raises(SingularMap):
        apply_basis_change(A, LinearMap.diagonal([1, 1, 0, 1, 1, 1]))


def test_product_subspace():
    A = make("M1", 7, {"delta": 0})
    L = Subspace.full(7)
    LL = product_subspace(A, L, L)
    assert LL == Subspace.coordinate(7, range(2, 7))
    assert product_subspace(A, Subspace.zero(7), L).dim == 0
    assert product_subspace(abelian(3), Subspace.full(3), Subspace.full(3)).dim == 0


def test_symbolic_table_verifies():
    A = make("M2", 7)  # lambda left symbolic
    assert not A.is_rational()
    assert verify_leibniz(A) is None


vecs7 = st.lists(st.integers(-3, 3), min_size=7, max_size=7)


@given(vecs7, vecs7, vecs7, st.integers(-3, 3))
def test_bracket_bilinear(u, v, w, c):
    A = make("M1", 7, {"delta": 1})
    uv = [a + c * b for a, b in zip(u, v)]
    lhs = bracket(A, uv, w)
    rhs = [a + c * b for a, b in zip(bracket(A, u, w), bracket(A, v, w))]
    assert list(lhs) == rhs


@settings(max_examples=25, deadline=None)
@given(invertible_maps(6))
def test_basis_change_round_trip_and_invariance(P):
    A = make("M3", 6, {"alpha": 1})
    B = apply_basis_change(A, P)
    assert apply_basis_change(B, P.inverse()) == A
    assert verify_leibniz(B) is None
    assert is_lie(B) == is_lie(A)
    bad = apply_basis_change(corrupted_m10(), invertible_maps_7_identity())
    assert verify_leibniz(bad) is not None


def invertible_maps_7_identity() -> LinearMap:
    return LinearMap.diagonal([1, 2, 1, Fraction(1, 2), 1, 1, 3])


@settings(max_examples=25, deadline=None)
@given(invertible_maps(3))
def test_lie_flag_invariant(P):
    assert is_lie(apply_basis_change(CROSS, P))
    assert verify_leibniz(apply_basis_change(CROSS, P)) is None


def test_basis_change_commutes_with_bracket():
    A = make("M4", 6)
    P = LinearMap.from_rows([[1, 1, 0, 0, 0, 0], [0, 1, 0, 0, 0, 2], [0, 0, 1, 0, 0, 0],
                             [0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]])
    B = apply_basis_change(A, P)
    for i in range(6):
        for j in range(6):
            # row convention: new basis vector i has old coordinates P.image(i)
            old = bracket(A, P.image(i), P.image(j))
            new = bracket(B, unit_vector(6, i), unit_vector(6, j))
            assert P.apply(new) == old
