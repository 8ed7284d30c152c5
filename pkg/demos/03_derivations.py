"""Derivations, matrix-form comparison and how many complement vectors are possible.

An extension R = N + Q acts on N through right multiplications, which must be
non-nilpotent derivations whose nonzero combinations stay non-nilpotent.  The
diagonal part of Der(N) caps the size of Q.
"""

from __future__ import annotations

from leibniz.catalog import make
from leibniz.derivations import (
    derivation_space,
    match_derivation_pattern,
    nil_independence_rank,
)

cases = [
    ("M1", 7, {"delta": 0}, "M1", {"delta": 0}),
    ("M1", 7, {"delta": 1}, "M1", {"delta": 1}),
    ("M2", 7, {"lambda": 0}, "M2", {"lam": 0}),
    ("M2", 7, {"lambda": 1}, "M2", {"lam": 1}),
    ("M3", 6, {"alpha": 1}, "M31", {}),
]
for family, n, params, pattern, kw in cases:
    A = make(family, n, params)
    der = derivation_space(A)
    match = match_derivation_pattern(A, pattern, **kw)
    rank = nil_independence_rank(list(der.basis))
    print(f"{family} {params}: dim Der = {der.dim}; {match.report}; at most {rank} complement vector(s)")

print("\na basis derivation of M^{3,1}:")
print(derivation_space(make("M3", 6, {"alpha": 1})).basis[0].matrix)
