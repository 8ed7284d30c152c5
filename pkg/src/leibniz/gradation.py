"""Integer gradations compatible with the bracket, and a maximum-length search.

A gradation assigns an integer weight to each basis vector so that every
nonzero structure constant ``c_ij^k`` satisfies ``w_k = w_i + w_j``.  It is
connected when the occupied weights form an interval; its length is the size
of that interval.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .algebra import Algebra
from .errors import BudgetExceeded, DimensionMismatch

__all__ = [
    "Gradation",
    "Valid",
    "Invalid",
    "Disconnected",
    "verify_gradation",
    "search_max_length_gradation",
    "DEFAULT_NODE_LIMIT",
]

DEFAULT_NODE_LIMIT = 200_000


@dataclass(frozen=True)
class Gradation:
    weights: tuple[int, ...]

    @property
    def occupied(self) -> frozenset[int]:
        return frozenset(self.weights)

    @property
    def length(self) -> int:
        return max(self.weights) - min(self.weights) + 1 if self.weights else 0

    def translate(self, t: int) -> "Gradation":
        return Gradation(tuple(w + t for w in self.weights))

    def canonical(self) -> "Gradation":
        """Translate so that the minimum weight is 1.

        Translation keeps the occupied interval and the length but not
        compatibility with a nonzero product.
        """
        return self.translate(1 - min(self.weights)) if self.weights else self


@dataclass(frozen=True)
class Valid:
    length: int

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class Invalid:
    """A nonzero product ``[e_i, e_j]`` with an ``e_k`` component breaking the weights (1-based)."""

    i: int
    j: int
    k: int

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class Disconnected:
    missing: int

    def __bool__(self) -> bool:
        return False


GradationResult = Union[Valid, Invalid, Disconnected]


def _support(A: Algebra) -> list[tuple[int, int, int]]:
    """Nonzero ``(i, j, k)`` triples (0-based), ordered by target, then ``(i, j)``."""
    triples = [(i, j, k) for (i, j), row in A.sparse_products().items() for k, _ in row]
    return sorted(triples, key=lambda t: (t[2], t[0], t[1]))


def verify_gradation(A: Algebra, weights: Sequence[int] | Gradation) -> GradationResult:
    """Check compatibility, then connectedness.

    Violations are reported for the smallest target index first, so a chain
    ``[e_i, e_1] = e_{i+1}`` is blamed at its lowest link.

    >>> from leibniz.algebra import abelian
    >>> verify_gradation(abelian(3), [0, 0, 0])
    Valid(length=1)
    """
    w = tuple(weights.weights if isinstance(weights, Gradation) else weights)
    if len(w) != A.dim:
        raise DimensionMismatch(f"{len(w)} weights for an algebra of dimension {A.dim}")
    for i, j, k in _support(A):
        if w[k] != w[i] + w[j]:
            return Invalid(i + 1, j + 1, k + 1)
    if not w:
        return Valid(0)
    occupied = set(w)
    for t in range(min(w), max(w) + 1):
        if t not in occupied:
            return Disconnected(t)
    return Valid(max(w) - min(w) + 1)


def search_max_length_gradation(
    A: Algebra, weight_bound: int | None = None, *, node_limit: int = DEFAULT_NODE_LIMIT
) -> Gradation | None:
    """A gradation of length ``dim A`` with weights in ``[-B, B]``, or ``None``.

    A length-``n`` gradation of an ``n``-dimensional algebra uses every
    weight of an interval exactly once, so after translating the minimum to 1
    its weights are a permutation ``p`` of ``1..n``.  If the original minimum
    was ``m``, each nonzero product forces ``p_k = p_i + p_j + (m - 1)``.  For
    every shift ``m`` allowed by ``[-B, B]`` a depth-first search assigns
    weights in basis order, smallest first, propagating every forced value
    through the product graph; the first complete assignment is the
    lexicographic minimum for that shift.

    Ties are broken on the translated sequence ``p``, but the returned
    weights are ``p + m - 1``: compatibility ``w_k = w_i + w_j`` is not
    preserved by translation, so only the untranslated weights are a
    gradation.  Among equal sequences the shift closest to ``m = 1`` wins, so
    whenever the minimum weight can be 1 the two coincide.

    Raises :class:`BudgetExceeded` once ``node_limit`` search nodes are used.

    >>> from leibniz.algebra import abelian
    >>> search_max_length_gradation(abelian(3))
    Gradation(weights=(1, 2, 3))
    """
    A.require_rational()
    n = A.dim
    if n == 0:
        return Gradation(())
    B = 2 * n if weight_bound is None else weight_bound
    if B < n:
        raise ValueError(f"weight bound {B} is below the dimension {n}")
    triples = _support(A)
    touching: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
    for t in triples:
        for idx in set(t):
            touching[idx].append(t)
    budget = [node_limit]
    best: tuple | None = None
    for m in range(-B, B - n + 2):
        found = _search_shift(n, m - 1, touching, budget)
        if found is None:
            continue
        key = (found, abs(m - 1), m)  # equal sequences: prefer the shift closest to minimum 1
        if best is None or key < best:
            best = key
    if best is None:
        return None
    perm, _, m = best
    return Gradation(tuple(p + m - 1 for p in perm))


def _search_shift(n, c, touching, budget) -> tuple[int, ...] | None:
    def propagate(p: list[int | None], used: set[int], start: int) -> bool:
        queue = [start]
        while queue:
            idx = queue.pop()
            for i, j, k in touching[idx]:
                wi, wj, wk = p[i], p[j], p[k]
                forced: tuple[int, int] | None = None
                if wi is not None and wj is not None:
                    if wk is None:
                        forced = (k, wi + wj + c)
                    elif wk != wi + wj + c:
                        return False
                elif wk is not None:
                    if i == j:
                        twice = wk - c
                        if twice % 2:
                            return False
                        forced = (i, twice // 2)
                    elif wi is not None:
                        forced = (j, wk - wi - c)
                    elif wj is not None:
                        forced = (i, wk - wj - c)
                if forced is not None:
                    pos, val = forced
                    if not 1 <= val <= n or val in used:
                        return False
                    p[pos] = val
                    used.add(val)
                    queue.append(pos)
        return True

    def dfs(p: list[int | None], used: set[int]) -> tuple[int, ...] | None:
        budget[0] -= 1
        if budget[0] < 0:
            raise BudgetExceeded("gradation search exceeded its node limit")
        try:
            idx = p.index(None)
        except ValueError:
            return tuple(p)  # type: ignore[arg-type]
        for val in range(1, n + 1):
            if val in used:
                continue
            q, u = list(p), set(used)
            q[idx] = val
            u.add(val)
            if propagate(q, u, idx):
                found = dfs(q, u)
                if found is not None:
                    return found
        return None

    return dfs([None] * n, set())
