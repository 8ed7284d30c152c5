"""Lower central and derived series, nilpotency and the right annihilator."""

from __future__ import annotations

from typing import Callable

from .algebra import Algebra, Subspace, product_subspace
from .errors import DimensionMismatch
from .linalg import ExactMatrix, rref_nullspace

__all__ = [
    "lower_central_series",
    "derived_series",
    "series_dims",
    "is_nilpotent",
    "is_solvable",
    "is_quasi_filiform",
    "right_annihilator",
    "is_two_sided_ideal",
    "subalgebra_lower_central_series",
    "generator_count",
]


def _series(start: Subspace, step: Callable[[Subspace], Subspace]) -> list[Subspace]:
    out = [start]
    while out[-1].dim:
        nxt = step(out[-1])
        if nxt == out[-1]:
            break
        out.append(nxt)
    return out


def lower_central_series(A: Algebra) -> list[Subspace]:
    """``L^1 = L, L^{k+1} = [L^k, L]``, up to the first zero term or repeat.

    A repeated (stable, nonzero) term is listed only once, so the last entry
    is ``L^k`` for every ``k >= len(series)``.
    """
    A.require_rational()
    L = Subspace.full(A.dim)
    return _series(L, lambda S: product_subspace(A, S, L))


def derived_series(A: Algebra) -> list[Subspace]:
    """``L^[1] = L, L^[s+1] = [L^[s], L^[s]]``, stopped like the lower central series."""
    A.require_rational()
    return _series(Subspace.full(A.dim), lambda S: product_subspace(A, S, S))


def series_dims(series: list[Subspace]) -> tuple[int, ...]:
    return tuple(s.dim for s in series)


def _term(series: list[Subspace], k: int) -> Subspace:
    """The k-th term (1-based) of a stopped series."""
    return series[min(k, len(series)) - 1]


def is_nilpotent(A: Algebra) -> bool:
    return lower_central_series(A)[-1].dim == 0


def is_solvable(A: Algebra) -> bool:
    return derived_series(A)[-1].dim == 0


def is_quasi_filiform(A: Algebra) -> bool:
    """``L^{n-2} != 0`` and ``L^{n-1} = 0``; always false below dimension 3."""
    n = A.dim
    if n < 3:
        return False
    lcs = lower_central_series(A)
    return _term(lcs, n - 2).dim != 0 and _term(lcs, n - 1).dim == 0


def right_annihilator(A: Algebra) -> Subspace:
    """``{y : [x, y] = 0 for all x}`` as the nullspace of the stacked left multiplications."""
    A.require_rational()
    n = A.dim
    # y is in the annihilator iff sum_j y_j c_ij^k = 0 for all i, k
    rows = []
    for i in range(n):
        for k in range(n):
            rows.append([A.coefficient(i, j, k) for j in range(n)])
    if not rows:
        return Subspace.full(n)
    null = rref_nullspace(ExactMatrix.from_rows(rows, n)).nullspace
    return Subspace.span(null, n)


def is_two_sided_ideal(A: Algebra, S: Subspace) -> bool:
    """``[S, L]`` and ``[L, S]`` both contained in ``S``."""
    if S.ambient_dim != A.dim:
        raise DimensionMismatch("subspace does not live in this algebra")
    L = Subspace.full(A.dim)
    return product_subspace(A, S, L) <= S and product_subspace(A, L, S) <= S


def subalgebra_lower_central_series(A: Algebra, N: Subspace) -> list[Subspace]:
    """Lower central series of the subalgebra *N*, computed inside the ambient space.

    ``N^1 = N, N^{k+1} = [N^k, N]``.  *N* must be closed under the bracket.
    """
    if not product_subspace(A, N, N) <= N:
        raise ValueError("subspace is not a subalgebra")
    return _series(N, lambda S: product_subspace(A, S, N))


def generator_count(A: Algebra) -> int:
    """``dim L - dim L^2``: the number of generators of a nilpotent algebra."""
    lcs = lower_central_series(A)
    return A.dim - (_term(lcs, 2).dim)

