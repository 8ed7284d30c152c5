"""Derivations, right multiplications and nil-independence.

The derivation algebra is computed as the nullspace of the linear system
``D([e_a, e_b]) = [D e_a, e_b] + [e_a, D e_b]`` in the ``n^2`` entries of
``D`` (row convention: row ``i`` of ``D`` is ``D(e_i)``).

The parametric matrix forms for the families ``M^{1,delta}``, ``M^{2,lambda}``
and ``M^{3,1}`` are generated from the recurrences

* ``M1``: ``d(e_i) = ((i-2) a1 + b2) e_i + sum_{t=i+1}^{n-1} b_{t-i+2} e_t``
  for ``3 <= i <= n-1``, with ``b2 = 3 a1`` when ``delta = 1``;
* ``M2``: ``d(e_i) = i a1 e_i + sum_{t=i+1}^{n-2} a_{t-i+1} e_t`` for
  ``2 <= i <= n-2``, with ``b_{n-3} = 0`` when ``lambda != 0``;

rather than from a printed matrix, so they hold for every ``n``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .algebra import Algebra, LinearMap, Subspace, _bracket_sparse, _dense, _sparse
from .errors import CapExceeded, DimensionMismatch, NotInvariant, PolynomialEntries, UnknownPattern
from .linalg import ExactMatrix, Vector, canonical_basis, nullspace_from_rref, sparse_rref
from .scalars import ONE, ZERO, Poly, Scalar, to_scalar, univariate_coeffs, univariate_gcd, var
from .structure import is_two_sided_ideal, subalgebra_lower_central_series

__all__ = [
    "DerivationSpace",
    "derivation_space",
    "is_derivation",
    "PATTERNS",
    "derivation_template",
    "PatternMatch",
    "match_derivation_pattern",
    "right_mult_restriction",
    "right_multiplication",
    "is_nilpotent_map",
    "trace_polynomials",
    "nil_independent",
    "nil_independent_pair",
    "nil_independence_rank",
    "NilradicalCheck",
    "verify_nilradical_candidate",
]


@dataclass(frozen=True)
class DerivationSpace:
    """Basis of ``Der(A)``; the basis is the reduced echelon basis of the flattened maps."""

    algebra: Algebra
    basis: tuple[LinearMap, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def subspace(self) -> Subspace:
        n2 = self.algebra.dim ** 2
        return Subspace(n2, tuple(D.flat() for D in self.basis))

    def general(self, prefix: str = "t") -> LinearMap:
        """``sum_i t_i B_i`` with symbolic coefficients ``t1, t2, ...``."""
        n = self.algebra.dim
        entries: list[Scalar] = [ZERO] * (n * n)
        for idx, D in enumerate(self.basis):
            t = var(f"{prefix}{idx + 1}")
            for k, x in enumerate(D.flat()):
                if x != 0:
                    entries[k] = entries[k] + t * x
        return LinearMap(ExactMatrix(n, n, tuple(entries)))


def _derivation_equations(A: Algebra) -> list[dict[int, Fraction]]:
    n = A.dim
    eqs: list[dict[int, Fraction]] = []
    for a in range(n):
        for b in range(n):
            block: dict[int, dict[int, Fraction]] = {}

            def add(m: int, col: int, c: Fraction) -> None:
                row = block.setdefault(m, {})
                v = row.get(col, ZERO) + c
                if v:
                    row[col] = v
                else:
                    row.pop(col, None)

            for k, c in A.sparse_product(a, b):
                for m in range(n):
                    add(m, k * n + m, c)
            for p in range(n):
                for m, c in A.sparse_product(p, b):
                    add(m, a * n + p, -c)
            for q in range(n):
                for m, c in A.sparse_product(a, q):
                    add(m, b * n + q, -c)
            eqs.extend(r for r in block.values() if r)
    return eqs


def derivation_space(A: Algebra) -> DerivationSpace:
    """All derivations of a rational algebra, as a canonical basis."""
    A.require_rational()
    n = A.dim
    pivots = sparse_rref(_derivation_equations(A))
    null = nullspace_from_rref(pivots, n * n)
    basis = canonical_basis(null, n * n)
    maps = tuple(LinearMap(ExactMatrix(n, n, v)) for v in basis)
    return DerivationSpace(A, maps)


def is_derivation(A: Algebra, D: LinearMap) -> bool:
    """Check the derivation property exactly on every basis pair."""
    n = A.dim
    if D.dim != n:
        raise DimensionMismatch("map and algebra dimensions differ")
    images = [_sparse(D.image(i)) for i in range(n)]
    for a in range(n):
        for b in range(n):
            lhs = {}
            for k, c in A.sparse_product(a, b):
                for m, x in images[k].items():
                    lhs[m] = lhs.get(m, ZERO) + c * x
            rhs = _bracket_sparse(A, images[a], {b: ONE})
            for m, x in _bracket_sparse(A, {a: ONE}, images[b]).items():
                rhs[m] = rhs.get(m, ZERO) + x
            for m in set(lhs) | set(rhs):
                diff = lhs.get(m, ZERO) - rhs.get(m, ZERO)
                if isinstance(diff, Poly) or diff != 0:
                    return False
    return True


# ---------------------------------------------------------------------------
# parametric forms

PATTERNS = ("M1", "M2", "M31")


def _template_M1(n: int, delta: int, a, b) -> list[list[Scalar]]:
    rows = [[ZERO] * n for _ in range(n)]
    a1 = a(1)
    b2 = 3 * a1 if delta else b(2)
    rows[0][0] = a1
    for t in (n - 2, n - 1, n):
        rows[0][t - 1] = a(t)
    rows[1][1] = b2
    for t in range(3, n + 1):
        rows[1][t - 1] = b(t)
    for i in range(3, n):
        rows[i - 1][i - 1] = (i - 2) * a1 + b2
        for t in range(i + 1, n):
            rows[i - 1][t - 1] = b(t - i + 2)
    rows[n - 1][n - 2] = a(n - 2)
    rows[n - 1][n - 1] = 2 * a1
    return rows


def _template_M2(n: int, lam: Fraction, a, b) -> list[list[Scalar]]:
    rows = [[ZERO] * n for _ in range(n)]
    a1 = a(1)
    for t in range(1, n + 1):
        rows[0][t - 1] = a(t)
    for i in range(2, n - 1):
        rows[i - 1][i - 1] = i * a1
        for t in range(i + 1, n - 1):
            rows[i - 1][t - 1] = a(t - i + 1)
    rows[1][n - 1] = (lam + 1) * a(n - 1)
    bn3 = ZERO if lam != 0 else b(n - 3)
    rows[n - 2][n - 4] = bn3
    for t in (n - 2, n - 1, n):
        rows[n - 2][t - 1] = b(t)
    rows[n - 1][n - 3] = bn3
    rows[n - 1][n - 1] = a1 + b(n - 1)
    return rows


def _template_M31(n: int, a, b) -> list[list[Scalar]]:
    if n != 6:
        raise DimensionMismatch("the M31 pattern exists only in dimension 6")
    rows = [[ZERO] * 6 for _ in range(6)]
    a1 = a(1)
    rows[0][0] = a1
    for t in (3, 4, 5, 6):
        rows[0][t - 1] = a(t)
    rows[1][1] = 3 * a1
    for t in (3, 4, 5, 6):
        rows[1][t - 1] = b(t)
    rows[2][2], rows[2][3], rows[2][4] = 4 * a1, b(3), b(4)
    rows[3][3], rows[3][4] = 5 * a1, b(3)
    rows[4][4] = 6 * a1
    rows[5][5] = 2 * a1
    return rows


def derivation_template(
    pattern: str,
    n: int,
    *,
    delta: int = 0,
    lam=0,
    a_name: str = "a{}",
    b_name: str = "b{}",
) -> tuple[LinearMap, tuple[str, ...]]:
    """Parametric derivation matrix for a nilradical family.

    Returns the map, with polynomial entries linear in the free parameters,
    together with the sorted parameter names.  ``a_name``/``b_name`` are
    format strings for the parameter variables.
    """
    a = lambda i: var(a_name.format(i))  # noqa: E731
    b = lambda i: var(b_name.format(i))  # noqa: E731
    if pattern == "M1":
        if delta not in (0, 1):
            raise ValueError("delta must be 0 or 1")
        rows = _template_M1(n, delta, a, b)
    elif pattern == "M2":
        lam = to_scalar(lam)
        if isinstance(lam, Poly):
            raise PolynomialEntries("the M2 pattern needs a rational lambda")
        rows = _template_M2(n, lam, a, b)
    elif pattern == "M31":
        rows = _template_M31(n, a, b)
    else:
        raise UnknownPattern(pattern)
    M = ExactMatrix.from_rows(rows, n)
    names: set[str] = set()
    for x in M.entries:
        if isinstance(x, Poly):
            names |= x.variables()
    return LinearMap(M), tuple(sorted(names, key=_natural))


def _natural(name: str):
    return [int(p) if p.isdigit() else p for p in re.split(r"(\d+)", name)]


def _template_span(M: LinearMap, names: Sequence[str]) -> list[Vector]:
    out = []
    for v in names:
        bind = {w: (ONE if w == v else ZERO) for w in names}
        out.append(tuple(x.subs(bind) if isinstance(x, Poly) else x for x in M.flat()))
    return out


class PatternMatch(NamedTuple):
    passed: bool
    computed_dim: int
    pattern_dim: int
    report: str


def match_derivation_pattern(A: Algebra, pattern: str, **params) -> PatternMatch:
    """Compare ``Der(A)`` with the span of a parametric matrix form.

    ``params`` are forwarded to :func:`derivation_template` (``delta`` for
    ``M1``, ``lam`` for ``M2``).
    """
    if pattern not in PATTERNS:
        raise UnknownPattern(pattern)
    der = derivation_space(A)
    M, names = derivation_template(pattern, A.dim, **params)
    span = Subspace.span(_template_span(M, names), A.dim ** 2)
    computed = der.subspace()
    if span == computed:
        return PatternMatch(True, der.dim, span.dim, f"Der has dimension {der.dim}, equal to the {pattern} form")
    missing = [i for i, D in enumerate(der.basis) if not span.contains(D.flat())]
    extra = [v for v in span.basis if not computed.contains(v)]
    return PatternMatch(
        False,
        der.dim,
        span.dim,
        f"Der has dimension {der.dim}, {pattern} form spans {span.dim}; "
        f"{len(missing)} derivations outside the form, {len(extra)} form directions are not derivations",
    )


# ---------------------------------------------------------------------------
# right multiplications


def right_multiplication(A: Algebra, x: Sequence) -> LinearMap:
    """``R_x(y) = [y, x]`` on the whole algebra."""
    sx = _sparse(x)
    n = A.dim
    return LinearMap(
        ExactMatrix.from_rows([_dense(n, _bracket_sparse(A, {i: ONE}, sx)) for i in range(n)], n)
    )


def right_mult_restriction(R: Algebra, x: Sequence, N: Subspace) -> LinearMap:
    """Matrix of ``y -> [y, x]`` on *N*, in the coordinates of ``N.basis``."""
    R.require_rational()
    sx = _sparse(x)
    rows = []
    for v in N.basis:
        w = _dense(R.dim, _bracket_sparse(R, _sparse(v), sx))
        coords = N.coordinates(w)
        if coords is None:
            raise NotInvariant("subspace is not invariant under right multiplication by x")
        rows.append(coords)
    if not rows:
        return LinearMap(ExactMatrix(0, 0, ()))
    return LinearMap(ExactMatrix.from_rows(rows, N.dim))


def is_nilpotent_map(D: LinearMap) -> bool:
    """``D^n == 0`` with ``n`` the dimension."""
    D.matrix.require_rational()
    return D.matrix.power(D.dim).is_zero()


# ---------------------------------------------------------------------------
# nil-independence


def trace_polynomials(M: LinearMap) -> list[Scalar]:
    """``tr(M^k)`` for ``k = 1 .. n``; entries may be symbolic."""
    out = []
    P = M.matrix
    for _ in range(M.dim):
        out.append(P.trace())
        P = P @ M.matrix
    return out


def nil_independent_pair(D1: LinearMap, D2: LinearMap) -> bool:
    """True iff no nonzero ``alpha D1 + beta D2`` is nilpotent.

    Over a field of characteristic zero a matrix is nilpotent iff
    ``tr(M^k) = 0`` for ``k = 1..n``.  The traces of ``alpha D1 + beta D2`` are
    homogeneous in ``(alpha, beta)``, so a common projective zero lies in one
    of the charts ``beta = 1`` or ``alpha = 1``; in each chart the common zeros
    are the roots of the gcd of the dehomogenized traces.
    """
    if D1.dim != D2.dim:
        raise DimensionMismatch("maps of different size")
    D1.matrix.require_rational()
    D2.matrix.require_rational()
    s = var("s")
    for fixed, moving in ((D2, D1), (D1, D2)):
        # chart: fixed coefficient 1, moving coefficient s
        M = LinearMap(moving.matrix.scale(s) + fixed.matrix)
        g = univariate_gcd(univariate_coeffs(t, "s") for t in trace_polynomials(M))
        if len(g) != 1:  # zero polynomial or a nonconstant gcd: common root exists
            return False
    return True


def nil_independent(maps: Sequence[LinearMap]) -> bool:
    """Nil-independence for one or two maps."""
    if len(maps) == 0:
        return True
    if len(maps) == 1:
        maps[0].matrix.require_rational()
        return not is_nilpotent_map(maps[0])
    if len(maps) == 2:
        return nil_independent_pair(maps[0], maps[1])
    raise CapExceeded("nil-independence is implemented for at most two maps")


def nil_independence_rank(maps: Sequence[LinearMap]) -> int | None:
    """Largest size of a nil-independent subset of ``span(maps)``, if certifiable.

    With ``D(t) = sum t_i maps[i]`` and diagonal entries ``l_j(t)``, the
    identity ``tr(D(t)^k) = sum_j l_j(t)^k`` for ``k = 1..n`` means the
    eigenvalues of ``D(t)`` are exactly the ``l_j(t)``.  Then ``D(t)`` is
    nilpotent iff every ``l_j(t)`` vanishes, the nilpotent elements form the
    common kernel ``K`` of the forms, and a subspace is nil-independent iff it
    meets ``K`` trivially: the answer is the rank of the forms.  Returns
    ``None`` when the identity fails (the eigenvalues are not read off the
    diagonal in this basis).
    """
    if not maps:
        return 0
    n = maps[0].dim
    entries: list[Scalar] = [ZERO] * (n * n)
    for idx, D in enumerate(maps):
        D.matrix.require_rational()
        t = var(f"t{idx + 1}")
        for k, x in enumerate(D.flat()):
            if x != 0:
                entries[k] = entries[k] + t * x
    G = LinearMap(ExactMatrix(n, n, tuple(entries)))
    diag = [G.matrix[i, i] for i in range(n)]
    for k, tr in enumerate(trace_polynomials(G), start=1):
        power_sum: Scalar = ZERO
        for d in diag:
            power_sum = power_sum + to_scalar(d) ** k
        if to_scalar(tr - power_sum) != 0:
            return None
    forms = []
    for d in diag:
        forms.append(
            tuple(
                (d.linear_coefficient(f"t{i + 1}") or ZERO) if isinstance(d, Poly) else ZERO
                for i in range(len(maps))
            )
        )
    return len(canonical_basis(forms, len(maps)))


# ---------------------------------------------------------------------------
# nilradical certificates


@dataclass(frozen=True)
class NilradicalCheck:
    """Outcome of :func:`verify_nilradical_candidate`.

    ``clause`` names the first violated condition (``None`` on success):
    ``complement``, ``ideal``, ``nilpotent``, ``derivation``, ``non-nilpotent``,
    ``nil-independent`` or ``dimension``.
    """

    passed: bool
    clause: str | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.passed


def verify_nilradical_candidate(R: Algebra, N: Subspace, complement: Sequence[Sequence]) -> NilradicalCheck:
    """Check the certificate clauses for ``R = N + span(complement)``.

    (a) *N* is a two-sided ideal, (b) *N* is nilpotent, (c) every complement
    element acts on *N* by a non-nilpotent derivation, (d) the complement is
    nil-independent, (e) ``2 dim N >= dim R``.  The complement must span a
    complement of *N*; at most two elements are supported.
    """
    R.require_rational()
    complement = [tuple(to_scalar(c) for c in x) for x in complement]
    if len(complement) > 2:
        raise CapExceeded("at most two complement elements are supported")
    total = Subspace.span(list(N.basis) + complement, R.dim)
    if total.dim != R.dim or N.dim + len(complement) != R.dim:
        return NilradicalCheck(False, "complement", "N and the complement do not span R directly")
    if not is_two_sided_ideal(R, N):
        return NilradicalCheck(False, "ideal", "N is not a two-sided ideal")
    if subalgebra_lower_central_series(R, N)[-1].dim != 0:
        return NilradicalCheck(False, "nilpotent", "lower central series of N does not reach 0")
    restrictions = []
    NA = _subalgebra(R, N)
    for idx, x in enumerate(complement, start=1):
        D = right_mult_restriction(R, x, N)
        if not is_derivation(NA, D):
            return NilradicalCheck(False, "derivation", f"R_x{idx} restricted to N is not a derivation")
        if is_nilpotent_map(D):
            return NilradicalCheck(False, "non-nilpotent", f"R_x{idx} restricted to N is nilpotent")
        restrictions.append(D)
    if len(restrictions) == 2 and not nil_independent_pair(*restrictions):
        return NilradicalCheck(False, "nil-independent", "a nonzero combination of R_x1, R_x2 is nilpotent")
    if 2 * N.dim < R.dim:
        return NilradicalCheck(False, "dimension", f"dim N = {N.dim} < dim R / 2 = {Fraction(R.dim, 2)}")
    return NilradicalCheck(True, None, "all clauses hold")


def _subalgebra(R: Algebra, N: Subspace) -> Algebra:
    """Structure constants of the subalgebra *N* in the coordinates of ``N.basis``."""
    rows = [_sparse(v) for v in N.basis]
    prods = {}
    for i, u in enumerate(rows):
        for j, v in enumerate(rows):
            w = _dense(R.dim, _bracket_sparse(R, u, v))
            coords = N.coordinates(w)
            if coords is None:
                raise NotInvariant("subspace is not a subalgebra")
            prods[(i, j)] = coords
    return Algebra(N.dim, prods)
