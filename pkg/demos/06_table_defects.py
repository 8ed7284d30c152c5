"""Two catalogued tables that do not satisfy the Leibniz identity as written.

R_2(M^{2,-1},1): one residual, repaired by a single extra term.
R(M^{3,1},1): the right multiplication by x admits no completion at all,
shown by solving the Leibniz system over every unknown product.
"""

from __future__ import annotations

from leibniz.algebra import Algebra, verify_leibniz
from leibniz.catalog import make
from leibniz.linalg import unit_vector
from leibniz.workbench import (
    auto_solve_linear,
    build_generic_extension,
    find_contradiction,
    residual_system,
    substitute,
)

for n in (6, 7, 8):
    R = make("RM2l_1.R2", n)
    w = verify_leibniz(R)
    lab = R.labels
    print(f"R_2(M^(2,-1),1) n={n}: L({lab[w.i - 1]}, {lab[w.j - 1]}, {lab[w.k - 1]}) =",
          {lab[k]: str(c) for k, c in enumerate(w.residual) if c})
    prods = dict(R.products)
    x = n
    prods[(x, 0)] = tuple(a - b for a, b in zip(prods[(x, 0)], unit_vector(n + 1, n - 1)))
    print("    with [x, e1] - e_n:", "Leibniz" if verify_leibniz(Algebra(n + 1, prods)) is None else "still broken")

R = make("RM31_1", 6)
w = verify_leibniz(R)
print("\nR(M^(3,1),1): first failing triple", (R.labels[w.i - 1], R.labels[w.j - 1], R.labels[w.k - 1]),
      {R.labels[k]: str(c) for k, c in enumerate(w.residual) if c})

# keep [e_i, x] = diag(1, 3, 4, 5, 6, 2) and let every [x, e_i], [x, x] be unknown
E = build_generic_extension(make("M3", 6, {"alpha": 1}), "M31", s=1)
E = substitute(E, {"a1": 1, **{v: 0 for v in ("a3", "a4", "a5", "a6", "b3", "b4", "b5", "b6")}})
labels = E.labels
S = residual_system(E, [(p, q, r) for p in labels for q in labels for r in labels])
subs = auto_solve_linear(S)
E = substitute(E, subs)
left = [e.reduced(E.bindings) for e in S]
left = [e for e in left if e.poly != 0]
print(f"{len(S)} equations, {len(subs)} unknowns eliminated, remaining: {[str(e) for e in left]}")
print("verdict:", find_contradiction(left, set(), E.bindings))
