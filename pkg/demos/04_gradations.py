"""Connected gradations of maximum length.

A length-n gradation of an n-dimensional algebra gives the n basis vectors
n consecutive weights, additive under the bracket.
"""

from __future__ import annotations

from leibniz.algebra import from_table
from leibniz.catalog import make
from leibniz.gradation import search_max_length_gradation, verify_gradation

for family, n, params in [("M1", 7, {"delta": 0}), ("M2", 7, {"lambda": 1}), ("M3", 6, {"alpha": 1}), ("M4", 7, {})]:
    A = make(family, n, params)
    g = search_max_length_gradation(A)
    pairs = ", ".join(f"{lab}:{w}" for lab, w in zip(A.labels, g.weights))
    print(f"{family}({n}) -> {pairs}   {verify_gradation(A, g)}")

M = make("M1", 7, {"delta": 0})
print("\nall weights equal:", verify_gradation(M, [1] * 7))
print("a gap in the weights:", verify_gradation(from_table(2, {}), [1, 3]))

# [e1,e2] = e1 forces w(e2) = 0, so the weights cannot start at 1
A = from_table(3, {(1, 2): {1: 1}})
g = search_max_length_gradation(A)
print("\n[e1,e2]=e1:", g.weights, verify_gradation(A, g), "| translated:", verify_gradation(A, g.canonical()))
