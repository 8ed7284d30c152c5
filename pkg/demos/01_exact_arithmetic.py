"""Exact scalars and row reduction.

Every structure constant is a Fraction or a sparse polynomial over the
rationals; linear algebra never touches floating point.
"""

from __future__ import annotations

from fractions import Fraction

from leibniz.linalg import ExactMatrix, rref_nullspace, solve_linear
from leibniz.scalars import format_scalar, parse_scalar, poly_eval, var

a1, b2 = var("a1"), var("b2")

# polynomials canonicalize: a constant polynomial is just a Fraction
p = (a1 + 1) * (a1 - 1)
print("(a1+1)(a1-1) =", format_scalar(p))
print("constant collapses:", repr((a1 + Fraction(1, 2)) - a1))

# text grammar shared by files and the command line
q = parse_scalar("3*a1 - 1/2*b2^2")
print("parsed:", format_scalar(q), "| at a1=1/3, b2=2:", poly_eval(q, {"a1": Fraction(1, 3), "b2": 2}))

# the Hilbert matrix is singular in floating point long before it is singular exactly
n = 10
H = ExactMatrix.from_rows([[Fraction(1, i + j + 1) for j in range(n)] for i in range(n)])
print(f"Hilbert({n}) rank:", H.rank())
print("largest entry of its inverse:", max(abs(x) for x in H.inverse().entries))

r = rref_nullspace(ExactMatrix.from_rows([[1, 2, 3], [2, 4, 6], [1, 0, 1]]))
print("rank", r.rank, "nullspace", [[format_scalar(x) for x in v] for v in r.nullspace])

sol = solve_linear(ExactMatrix.from_rows([[1, 1]]), [2])
print("x + y = 2:", [str(x) for x in sol.particular], "+ span", [[str(x) for x in v] for v in sol.nullspace])
print("x = 0 and x = 1:", solve_linear(ExactMatrix.from_rows([[1], [1]]), [0, 1]))
