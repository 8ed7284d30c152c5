"""Invariant profiles, non-isomorphism certificates and the JSON file format."""

from __future__ import annotations

from itertools import combinations

from leibniz.catalog import make
from leibniz.invariants import distinguish, profile
from leibniz.serialization import parse, serialize

nils = {"M^{1,0}": make("M1", 6, {"delta": 0}), "M^{2,0}": make("M2", 6, {"lambda": 0}),
        "M^{3,1}": make("M3", 6, {"alpha": 1}), "M^4": make("M4", 6)}
for name, A in nils.items():
    print(f"{name:8} {profile(A)}")
print()
for a, b in combinations(nils, 2):
    print(f"{a} vs {b}: {distinguish(nils[a], nils[b])}")

# members of a continuous family share a profile; the parameter itself separates them
r1, r2 = make("RM10_1.R7", 7, {"alpha": "1/2"}), make("RM10_1.R7", 7, {"alpha": "1/3"})
print("\nR_7(M^(1,0),1), alpha = 1/2 vs 1/3:", distinguish(r1, r2))

text = serialize(make("M4", 6))
print("\n" + text)
print("round trip exact:", parse(text) == make("M4", 6))
