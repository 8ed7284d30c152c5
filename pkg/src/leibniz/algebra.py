"""Leibniz algebras given by structure constants.

An :class:`Algebra` stores only its nonzero products ``[e_i, e_j]`` as
coordinate vectors.  Indices are 0-based in the API; labels default to
``e1 .. en`` and everything user facing (witnesses, files, reports) is
1-based.

Vectors are plain tuples of scalars.  A :class:`LinearMap` uses the row
convention throughout the package: row ``i`` holds the coordinates of the
image of basis vector ``i``, so the image of a row vector ``u`` is ``u @ M``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import DimensionMismatch, PolynomialEntries
from .linalg import ExactMatrix, Vector, canonical_basis, rref_nullspace, unit_vector, vec_is_zero, zero_vector
from .scalars import ZERO, Poly, Scalar, to_scalar, variables_of

__all__ = [
    "Algebra",
    "Subspace",
    "LinearMap",
    "LeibnizWitness",
    "bracket",
    "leibniz_residual",
    "verify_leibniz",
    "leibniz_failures",
    "is_lie",
    "apply_basis_change",
    "product_subspace",
    "abelian",
    "from_table",
]


def _nz(x: Scalar) -> bool:
    return isinstance(x, Poly) or x != 0


def _add_into(acc: dict[int, Scalar], k: int, x: Scalar) -> None:
    v = acc.get(k, ZERO) + x
    if _nz(v):
        acc[k] = v
    else:
        acc.pop(k, None)


@dataclass(frozen=True, eq=False)
class Algebra:
    """Finite-dimensional algebra ``[e_i, e_j] = sum_k c_ij^k e_k``.

    ``products`` maps ``(i, j)`` to a length-``dim`` coordinate vector; absent
    keys and all-zero vectors both mean a zero product (zero vectors are
    dropped on construction).  ``params`` records parameter bindings used to
    build the table (``None`` for a parameter left symbolic).
    """

    dim: int
    products: Mapping[tuple[int, int], Vector]
    labels: tuple[str, ...] = ()
    params: Mapping[str, Fraction | None] = field(default_factory=dict)

    def __post_init__(self):
        n = self.dim
        clean: dict[tuple[int, int], Vector] = {}
        for (i, j), vec in self.products.items():
            if not (0 <= i < n and 0 <= j < n):
                raise DimensionMismatch(f"product index ({i + 1}, {j + 1}) outside dimension {n}")
            if len(vec) != n:
                raise DimensionMismatch(
                    f"product [{i + 1},{j + 1}] has {len(vec)} coordinates, expected {n}"
                )
            vec = tuple(to_scalar(x) for x in vec)
            if not vec_is_zero(vec):
                clean[(i, j)] = vec
        object.__setattr__(self, "products", dict(sorted(clean.items())))
        labels = tuple(self.labels) if self.labels else tuple(f"e{i + 1}" for i in range(n))
        if len(labels) != n:
            raise DimensionMismatch(f"{len(labels)} labels for dimension {n}")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "params", dict(self.params))
        sparse = {
            key: tuple((k, c) for k, c in enumerate(vec) if _nz(c)) for key, vec in self.products.items()
        }
        object.__setattr__(self, "_sparse", sparse)
        left: dict[int, list[tuple[int, tuple]]] = {}
        for (i, j), terms in sparse.items():
            left.setdefault(i, []).append((j, terms))
        object.__setattr__(self, "_by_left", left)

    # -- comparisons -------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Algebra):
            return NotImplemented
        return self.dim == other.dim and self.products == other.products

    def __hash__(self):
        return hash((self.dim, tuple(self.products.items())))

    def __repr__(self):
        return f"Algebra(dim={self.dim}, products={len(self.products)})"

    # -- queries -----------------------------------------------------------
    def product(self, i: int, j: int) -> Vector:
        return self.products.get((i, j), zero_vector(self.dim))

    def sparse_product(self, i: int, j: int) -> tuple[tuple[int, Scalar], ...]:
        return self._sparse.get((i, j), ())

    def sparse_products(self) -> Mapping[tuple[int, int], tuple[tuple[int, Scalar], ...]]:
        """``{(i, j): ((k, c), ...)}`` over the nonzero products and coefficients."""
        return self._sparse

    def coefficient(self, i: int, j: int, k: int) -> Scalar:
        vec = self.products.get((i, j))
        return vec[k] if vec is not None else ZERO

    def variables(self) -> frozenset[str]:
        return variables_of(x for vec in self.products.values() for x in vec)

    def is_rational(self) -> bool:
        return not self.variables()

    def require_rational(self) -> None:
        if not self.is_rational():
            raise PolynomialEntries(
                f"algebra has symbolic coefficients in {sorted(self.variables())}; instantiate them first"
            )

    def instantiate(self, bindings: Mapping[str, object]) -> "Algebra":
        """Substitute values for free parameters in every structure constant."""
        bind = {k: to_scalar(v) for k, v in bindings.items()}
        prods = {
            key: tuple(x.subs(bind) if isinstance(x, Poly) else x for x in vec)
            for key, vec in self.products.items()
        }
        params = dict(self.params)
        for k, v in bind.items():
            if k in params or k in self.variables():
                params[k] = v if not isinstance(v, Poly) else None
        return Algebra(self.dim, prods, self.labels, params)

    def basis(self) -> list[Vector]:
        return [unit_vector(self.dim, i) for i in range(self.dim)]

    def left_matrix(self, i: int) -> ExactMatrix:
        """Matrix (row convention) of ``y -> [e_i, y]``."""
        n = self.dim
        return ExactMatrix.from_rows([self.product(i, j) for j in range(n)], n)

    def right_matrix(self, j: int) -> ExactMatrix:
        """Matrix (row convention) of ``y -> [y, e_j]``."""
        n = self.dim
        return ExactMatrix.from_rows([self.product(i, j) for i in range(n)], n)


def abelian(n: int) -> Algebra:
    return Algebra(n, {})


def from_table(n: int, table: Mapping[tuple[int, int], Mapping[int, object]], **kw) -> Algebra:
    """Build an algebra from a 1-based sparse table ``{(i, j): {k: c}}``.

    Targets with ``k > n`` are dropped, matching the convention that products
    running past the last basis vector vanish.
    """
    prods: dict[tuple[int, int], list] = {}
    for (i, j), terms in table.items():
        vec = prods.setdefault((i - 1, j - 1), [ZERO] * n)
        for k, c in terms.items():
            if 1 <= k <= n:
                vec[k - 1] = vec[k - 1] + to_scalar(c)
            elif k < 1:
                raise DimensionMismatch(f"target index {k} < 1")
    return Algebra(n, {key: tuple(v) for key, v in prods.items()}, **kw)


def _check(A: Algebra, *vs: Sequence) -> None:
    for v in vs:
        if len(v) != A.dim:
            raise DimensionMismatch(f"vector of length {len(v)} for an algebra of dimension {A.dim}")


def _bracket_sparse(A: Algebra, u: dict[int, Scalar], v: dict[int, Scalar]) -> dict[int, Scalar]:
    acc: dict[int, Scalar] = {}
    for i, ui in u.items():
        for j, terms in A._by_left.get(i, ()):
            vj = v.get(j)
            if vj is None:
                continue
            f = ui * vj
            for k, c in terms:
                _add_into(acc, k, f * c)
    return acc


def _sparse(v: Sequence[Scalar]) -> dict[int, Scalar]:
    return {i: to_scalar(x) for i, x in enumerate(v) if _nz(x)}


def _dense(n: int, d: dict[int, Scalar]) -> Vector:
    out = [ZERO] * n
    for k, x in d.items():
        out[k] = x
    return tuple(out)


def bracket(A: Algebra, u: Sequence, v: Sequence) -> Vector:
    """Bilinear extension of the structure table."""
    _check(A, u, v)
    return _dense(A.dim, _bracket_sparse(A, _sparse(u), _sparse(v)))


def _residual_sparse(A: Algebra, x, y, z) -> dict[int, Scalar]:
    xy = _bracket_sparse(A, x, y)
    xz = _bracket_sparse(A, x, z)
    out = _bracket_sparse(A, x, _bracket_sparse(A, y, z))
    for k, c in _bracket_sparse(A, xy, z).items():
        _add_into(out, k, -c)
    for k, c in _bracket_sparse(A, xz, y).items():
        _add_into(out, k, c)
    return out


def leibniz_residual(A: Algebra, x: Sequence, y: Sequence, z: Sequence) -> Vector:
    """``[x,[y,z]] - [[x,y],z] + [[x,z],y]``, zero iff the triple satisfies the identity."""
    _check(A, x, y, z)
    return _dense(A.dim, _residual_sparse(A, _sparse(x), _sparse(y), _sparse(z)))


class LeibnizWitness(NamedTuple):
    """A failing basis triple, 1-based, with the nonzero residual."""

    i: int
    j: int
    k: int
    residual: Vector


def leibniz_failures(A: Algebra) -> Iterable[LeibnizWitness]:
    """Yield every failing basis triple in lexicographic order."""
    n = A.dim
    units = [{i: Fraction(1)} for i in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                r = _residual_sparse(A, units[i], units[j], units[k])
                if r:
                    yield LeibnizWitness(i + 1, j + 1, k + 1, _dense(n, r))


def verify_leibniz(A: Algebra) -> LeibnizWitness | None:
    """``None`` if the identity holds on all basis triples, else the first failure.

    Works for symbolic tables: a residual counts as zero only if it is the
    zero polynomial.
    """
    return next(iter(leibniz_failures(A)), None)


def is_lie(A: Algebra) -> bool:
    """Whether the table is antisymmetric, ``c_ij^k == -c_ji^k``."""
    n = A.dim
    for i in range(n):
        for j in range(i, n):
            a, b = A.product(i, j), A.product(j, i)
            if any(_nz(p + q) for p, q in zip(a, b)):
                return False
    return True


@dataclass(frozen=True)
class LinearMap:
    """Square matrix acting on coordinate row vectors: ``image(u) = u @ M``."""

    matrix: ExactMatrix

    def __post_init__(self):
        if self.matrix.rows != self.matrix.cols:
            raise DimensionMismatch("linear map must be square")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "LinearMap":
        return cls(ExactMatrix.from_rows(rows))

    @classmethod
    def identity(cls, n: int) -> "LinearMap":
        return cls(ExactMatrix.identity(n))

    @classmethod
    def diagonal(cls, diag: Sequence) -> "LinearMap":
        return cls(ExactMatrix.diagonal(diag))

    @property
    def dim(self) -> int:
        return self.matrix.rows

    def image(self, i: int) -> Vector:
        return self.matrix.row(i)

    def apply(self, u: Sequence) -> Vector:
        if len(u) != self.dim:
            raise DimensionMismatch("vector length does not match map")
        out: list[Scalar] = [ZERO] * self.dim
        for i, ui in enumerate(u):
            if _nz(ui):
                for j, m in enumerate(self.matrix.row(i)):
                    if _nz(m):
                        out[j] = out[j] + ui * m
        return tuple(out)

    def compose(self, other: "LinearMap") -> "LinearMap":
        """``self`` after ``other``; with row vectors this is ``other @ self``."""
        return LinearMap(other.matrix @ self.matrix)

    def inverse(self) -> "LinearMap":
        return LinearMap(self.matrix.inverse())

    def flat(self) -> Vector:
        return self.matrix.entries


def apply_basis_change(A: Algebra, P: LinearMap) -> Algebra:
    """Structure table of the same product in the basis ``e'_i = sum_j P[i, j] e_j``.

    A vector with old coordinates ``u`` has new coordinates ``u @ P^-1``; the
    returned algebra satisfies ``new_bracket(u P^-1, v P^-1) = old_bracket(u, v) P^-1``.
    ``P`` must be rational and invertible; the algebra may be symbolic.
    """
    if P.dim != A.dim:
        raise DimensionMismatch(f"basis change of size {P.dim} for dimension {A.dim}")
    Pinv = P.inverse()
    n = A.dim
    rows = [_sparse(P.image(i)) for i in range(n)]
    inv_rows = [_sparse(Pinv.image(k)) for k in range(n)]
    prods = {}
    for i in range(n):
        for j in range(n):
            w = _bracket_sparse(A, rows[i], rows[j])
            if not w:
                continue
            acc: dict[int, Scalar] = {}
            for k, c in w.items():
                for m, q in inv_rows[k].items():
                    _add_into(acc, m, c * q)
            if acc:
                prods[(i, j)] = _dense(n, acc)
    return Algebra(n, prods, params=A.params)


@dataclass(frozen=True)
class Subspace:
    """Subspace of ``Q^n`` held as a reduced row echelon basis.

    Equal subspaces have identical representations, so ``==`` is subspace
    equality.
    """

    ambient_dim: int
    basis: tuple[Vector, ...]

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, canonical_basis(vectors, ambient_dim))

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, tuple(unit_vector(n, i) for i in range(n)))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, ())

    @classmethod
    def coordinate(cls, n: int, indices: Iterable[int]) -> "Subspace":
        """Span of the basis vectors with the given 0-based indices."""
        return cls.span([unit_vector(n, i) for i in indices], n)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def pivots(self) -> list[int]:
        return [next(j for j, x in enumerate(v) if x != 0) for v in self.basis]

    def contains(self, v: Sequence) -> bool:
        return self.coordinates(v) is not None

    def coordinates(self, v: Sequence) -> Vector | None:
        """Coordinates of *v* in :attr:`basis`, or ``None`` if ``v`` is outside."""
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("vector length does not match ambient dimension")
        if any(isinstance(x, Poly) for x in v):
            raise PolynomialEntries("vector has polynomial entries")
        coords = tuple(Fraction(v[p]) for p in self.pivots())
        rest = list(v)
        for c, b in zip(coords, self.basis):
            if c:
                rest = [r - c * x for r, x in zip(rest, b)]
        return coords if vec_is_zero(rest) else None

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(v) for v in self.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.basis + other.basis, self.ambient_dim)

    def complement_equations(self) -> list[Vector]:
        """Vectors ``w`` with ``v in self`` iff ``v . w == 0`` for all ``w``."""
        n = self.ambient_dim
        if not self.basis:
            return [unit_vector(n, i) for i in range(n)]
        return rref_nullspace(ExactMatrix.from_rows(self.basis, n)).nullspace


def product_subspace(A: Algebra, U: Subspace, V: Subspace) -> Subspace:
    """Canonical span of ``[u, v]`` over basis pairs of ``U`` and ``V``."""
    A.require_rational()
    if U.ambient_dim != A.dim or V.ambient_dim != A.dim:
        raise DimensionMismatch("subspaces do not live in this algebra")
    vs = [_sparse(v) for v in V.basis]
    out = []
    for u in U.basis:
        su = _sparse(u)
        for sv in vs:
            w = _bracket_sparse(A, su, sv)
            if w:
                out.append(_dense(A.dim, w))
    return Subspace.span(out, A.dim)
