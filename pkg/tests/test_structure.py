from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from helpers import invertible_maps
from leibniz.algebra import Subspace, abelian, apply_basis_change, bracket, product_subspace
from leibniz.catalog import make
from leibniz.errors import PolynomialEntries
from leibniz.structure import (
    derived_series,
    generator_count,
    is_nilpotent,
    is_quasi_filiform,
    is_solvable,
    is_two_sided_ideal,
    lower_central_series,
    right_annihilator,
    series_dims,
)


@pytest.mark.parametrize(
    "family, n, params, dims",
    [
        ("M1", 7, {"delta": 0}, (7, 5, 3, 2, 1, 0)),
        ("M3", 6, {"alpha": 1}, (6, 4, 2, 1, 0)),
        ("M4", 7, {}, (7, 5, 3, 2, 1, 0)),
    ],
)
def test_lower_central_series(family, n, params, dims):
    assert series_dims(lower_central_series(make(family, n, params))) == dims


def test_abelian_series():
    assert series_dims(lower_central_series(abelian(4))) == (4, 0)
    assert series_dims(derived_series(abelian(4))) == (4, 0)


def test_derived_series_reaches_zero():
    assert series_dims(derived_series(make("M4", 7)))[-1] == 0
    R = make("RM10_1.R7", 7, {"alpha": 0})
    d = derived_series(R)
    assert d[-1].dim == 0
    N = Subspace.coordinate(8, range(7))
    assert all(d[1].contains(v) for v in product_subspace(R, N, N).basis)


@pytest.mark.parametrize(
    "family, params",
    [("M1", {"delta": 0}), ("M1", {"delta": 1}), ("M2", {"lambda": 0}), ("M2", {"lambda": 3}),
     ("M3", {"alpha": 0}), ("M3", {"alpha": 1}), ("M4", {})],
)
def test_nilradical_families_nilpotent_quasi_filiform(family, params):
    A = make(family, 6, params)
    assert is_nilpotent(A) and is_quasi_filiform(A)


def test_solvable_extension_not_nilpotent():
    R = make("RM10_1.R7", 7, {"alpha": 0})
    assert is_solvable(R) and not is_nilpotent(R)


def test_quasi_filiform_negative_and_small():
    assert not is_quasi_filiform(abelian(7))
    assert not is_quasi_filiform(abelian(2))
    assert is_quasi_filiform(make("M2", 7, {"lambda": 1}))


@pytest.mark.parametrize(
    "family, n, params, indices",
    [
        ("M1", 7, {"delta": 0}, range(1, 7)),
        ("M3", 6, {"alpha": 1}, [4, 5]),
        ("M4", 6, {}, [1, 2, 3, 5]),
    ],
)
def test_right_annihilator(family, n, params, indices):
    A = make(family, n, params)
    ann = right_annihilator(A)
    assert ann == Subspace.coordinate(n, indices)
    assert is_two_sided_ideal(A, ann)


def test_rank_operations_reject_symbols():
    with pytest.raises(PolynomialEntries):
        lower_central_series(make("M2", 6))


def test_generator_count():
    assert generator_count(make("M1", 7, {"delta": 0})) == 2
    assert generator_count(abelian(3)) == 3


vec6 = st.lists(st.integers(-3, 3), min_size=6, max_size=6)


@given(vec6, vec6)
def test_squares_and_symmetrized_products_in_annihilator(x, y):
    A = make("M3", 6, {"alpha": 1})
    ann = right_annihilator(A)
    assert ann.contains(bracket(A, x, x))
    assert ann.contains([a + b for a, b in zip(bracket(A, x, y), bracket(A, y, x))])


@settings(max_examples=20, deadline=None)
@given(invertible_maps(6))
def test_series_dims_basis_invariant(P):
    A = make("M4", 6)
    B = apply_basis_change(A, P)
    assert series_dims(lower_central_series(B)) == series_dims(lower_central_series(A))
    assert series_dims(derived_series(B)) == series_dims(derived_series(A))


@pytest.mark.parametrize("family, params", [("M1", {"delta": 1}), ("M2", {"lambda": 2}), ("M4", {})])
def test_nilpotent_bounds_and_derived_inside_square(family, params):
    A = make(family, 7, params)
    lcs = lower_central_series(A)
    assert len(lcs) <= A.dim + 1 and lcs[-1].dim == 0
    d = derived_series(A)
    L2 = product_subspace(A, Subspace.full(7), Subspace.full(7))
    if len(d) > 2:
        assert all(L2.contains(v) for v in d[2].basis)
