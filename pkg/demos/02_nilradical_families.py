"""The four quasi-filiform families of maximum length and their basic structure."""

from __future__ import annotations

from leibniz.algebra import apply_basis_change, is_lie, verify_leibniz
from leibniz.catalog import list_families, make, rebase_link
from leibniz.structure import (
    derived_series,
    is_nilpotent,
    is_quasi_filiform,
    lower_central_series,
    right_annihilator,
    series_dims,
)

for entry in list_families("nilradical"):
    print(f"{entry.id:3} {entry.title:16} {entry.doc}")
print()

samples = [("M1", 7, {"delta": 0}), ("M1", 7, {"delta": 1}), ("M2", 7, {"lambda": 3}),
           ("M3", 6, {"alpha": 1}), ("M3", 8, {"alpha": 0}), ("M4", 7, {})]
for family, n, params in samples:
    A = make(family, n, params)
    print(
        f"{family} n={n} {params}: Leibniz={verify_leibniz(A) is None} Lie={is_lie(A)} "
        f"nilpotent={is_nilpotent(A)} quasi-filiform={is_quasi_filiform(A)}"
    )
    print(f"    LCS {series_dims(lower_central_series(A))}  derived {series_dims(derived_series(A))}  "
          f"dim Ann_r = {right_annihilator(A).dim}")

# M^{1,delta} is given in two bases; the permutation below links them
original, P, rebased = rebase_link("M1", 7, {"delta": 1})
print("\nrebasing M1 reproduces the working table:", apply_basis_change(original, P) == rebased)
print("new basis in old coordinates:", [P.image(i).index(1) + 1 for i in range(7)])

# the parameter lambda can stay symbolic: the identity holds for every lambda at once
print("M2 with symbolic lambda satisfies the identity:", verify_leibniz(make("M2", 8)) is None)
