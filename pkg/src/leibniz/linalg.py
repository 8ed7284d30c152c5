"""Exact linear algebra over Q.

Row reduction uses deterministic pivoting (first nonzero entry in column
order) and Python's arbitrary precision integers through ``Fraction``, so
nothing can overflow.  Matrices with polynomial entries are rejected by every
routine that has to make a rank decision.

Internally the elimination works on sparse rows (``{column: value}``) because
the systems built by the derivation and annihilator code are very sparse.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .errors import DimensionMismatch, PolynomialEntries, SingularMap
from .scalars import ONE, ZERO, Poly, Scalar, format_scalar, to_scalar

Vector = tuple  # tuple of scalars

__all__ = [
    "ExactMatrix",
    "RREFResult",
    "LinearSolution",
    "rref_nullspace",
    "solve_linear",
    "sparse_rref",
    "nullspace_from_rref",
    "canonical_basis",
    "vec_add",
    "vec_scale",
    "vec_is_zero",
    "zero_vector",
    "unit_vector",
]


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    v = [ZERO] * n
    v[i] = ONE
    return tuple(v)


def vec_add(u: Sequence[Scalar], v: Sequence[Scalar]) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vec_scale(c: Scalar, v: Sequence[Scalar]) -> Vector:
    return tuple(c * a for a in v)


def vec_is_zero(v: Iterable[Scalar]) -> bool:
    return all(not isinstance(a, Poly) and a == 0 for a in v)


@dataclass(frozen=True)
class ExactMatrix:
    """Dense ``rows x cols`` matrix of scalars stored row-major."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "ExactMatrix":
        rows = [tuple(to_scalar(x) for x in r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimensionMismatch("ragged rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, tuple(ONE if i == j else ZERO for i in range(n) for j in range(n)))

    @classmethod
    def diagonal(cls, diag: Sequence) -> "ExactMatrix":
        n = len(diag)
        d = [to_scalar(x) for x in diag]
        return cls(n, n, tuple(d[i] if i == j else ZERO for i in range(n) for j in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> Scalar:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def row_list(self) -> list[Vector]:
        return [self.row(i) for i in range(self.rows)]

    def column(self, j: int) -> Vector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            self.cols, self.rows, tuple(self[i, j] for j in range(self.cols) for i in range(self.rows))
        )

    def is_rational(self) -> bool:
        return not any(isinstance(x, Poly) for x in self.entries)

    def require_rational(self) -> None:
        if not self.is_rational():
            raise PolynomialEntries("matrix has polynomial entries; instantiate parameters first")

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = []
        ocols = [other.column(j) for j in range(other.cols)]
        for i in range(self.rows):
            r = self.row(i)
            nz = [(k, a) for k, a in enumerate(r) if not (not isinstance(a, Poly) and a == 0)]
            for j in range(other.cols):
                col = ocols[j]
                s: Scalar = ZERO
                for k, a in nz:
                    b = col[k]
                    if isinstance(b, Poly) or b != 0:
                        s = s + a * b
                out.append(s)
        return ExactMatrix(self.rows, other.cols, tuple(out))

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shape mismatch")
        return ExactMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + other.scale(-1)

    def scale(self, c) -> "ExactMatrix":
        c = to_scalar(c)
        return ExactMatrix(self.rows, self.cols, tuple(c * a for a in self.entries))

    def power(self, k: int) -> "ExactMatrix":
        if self.rows != self.cols:
            raise DimensionMismatch("power of a non-square matrix")
        result = ExactMatrix.identity(self.rows)
        for _ in range(k):
            result = result @ self
        return result

    def trace(self) -> Scalar:
        s: Scalar = ZERO
        for i in range(min(self.rows, self.cols)):
            s = s + self[i, i]
        return s

    def is_zero(self) -> bool:
        return vec_is_zero(self.entries)

    def rank(self) -> int:
        return rref_nullspace(self).rank

    def inverse(self) -> "ExactMatrix":
        """Exact inverse; raises :class:`SingularMap` if not invertible."""
        if self.rows != self.cols:
            raise SingularMap("non-square matrix is not invertible")
        self.require_rational()
        n = self.rows
        aug = [list(self.row(i)) + [ONE if i == j else ZERO for j in range(n)] for i in range(n)]
        red = rref_nullspace(ExactMatrix.from_rows(aug, 2 * n)).rref
        for i in range(n):
            if red[i, i] != 1:
                raise SingularMap("matrix is singular")
        return ExactMatrix.from_rows([red.row(i)[n:] for i in range(n)], n)

    def __str__(self) -> str:
        cells = [[format_scalar(x) for x in self.row(i)] for i in range(self.rows)]
        width = max((len(c) for r in cells for c in r), default=1)
        return "\n".join("[" + "  ".join(c.rjust(width) for c in r) + "]" for r in cells)


class RREFResult(NamedTuple):
    rref: ExactMatrix
    rank: int
    nullspace: list[Vector]


class LinearSolution(NamedTuple):
    particular: Vector
    nullspace: list[Vector]


def sparse_rref(rows: Iterable[dict[int, Fraction]]) -> dict[int, dict[int, Fraction]]:
    """Fully reduced row echelon form of a sparse system.

    Returns ``{pivot_column: row}`` where each row has 1 at its pivot and 0 at
    every other pivot column.  Rows are fed incrementally, so the cost is
    governed by the rank, not by the number of equations.
    """
    pivots: dict[int, dict[int, Fraction]] = {}
    for raw in rows:
        row = {c: v for c, v in raw.items() if v != 0}
        # reduce against existing pivots
        for c in sorted(set(row) & pivots.keys()):
            v = row.get(c)
            if not v:
                continue
            for pc, pv in pivots[c].items():
                nv = row.get(pc, ZERO) - v * pv
                if nv:
                    row[pc] = nv
                else:
                    row.pop(pc, None)
        # a reduction can introduce further pivot columns only if they were
        # already nonzero in a pivot row; pivot rows are zero at other pivots,
        # so a single pass suffices.
        if not row:
            continue
        p = min(row)
        inv = 1 / row[p]
        row = {c: v * inv for c, v in row.items()}
        for other in pivots.values():
            v = other.get(p)
            if v:
                for c, rv in row.items():
                    nv = other.get(c, ZERO) - v * rv
                    if nv:
                        other[c] = nv
                    else:
                        other.pop(c, None)
        pivots[p] = row
    return pivots


def nullspace_from_rref(pivots: dict[int, dict[int, Fraction]], ncols: int) -> list[Vector]:
    """One basis vector per free column: 1 there, 0 at the other free columns."""
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for p, row in pivots.items():
            x = row.get(f)
            if x:
                v[p] = -x
        basis.append(tuple(v))
    return basis


def _sparse_rows(M: ExactMatrix) -> list[dict[int, Fraction]]:
    M.require_rational()
    return [{j: x for j, x in enumerate(M.row(i)) if x != 0} for i in range(M.rows)]


def rref_nullspace(M: ExactMatrix) -> RREFResult:
    """Reduced row echelon form, rank and a nullspace basis of a rational matrix.

    The nullspace basis has one vector per free column (ascending), with a 1
    in that column and 0 in every other free column; it is therefore unique.

    >>> r = rref_nullspace(ExactMatrix.from_rows([[1, 2], [2, 4]]))
    >>> r.rank, [tuple(map(str, v)) for v in r.nullspace]
    (1, [('-2', '1')])
    """
    pivots = sparse_rref(_sparse_rows(M))
    rows = []
    for p in sorted(pivots):
        r = pivots[p]
        rows.append(tuple(r.get(j, ZERO) for j in range(M.cols)))
    rows += [zero_vector(M.cols)] * (M.rows - len(rows))
    rref = ExactMatrix(M.rows, M.cols, tuple(x for r in rows for x in r))
    return RREFResult(rref, len(pivots), nullspace_from_rref(pivots, M.cols))


def solve_linear(M: ExactMatrix, rhs: Sequence) -> LinearSolution | None:
    """Solve ``M x = rhs``; ``None`` when inconsistent.

    The particular solution sets every free variable to zero.
    """
    rhs = [to_scalar(x) for x in rhs]
    if len(rhs) != M.rows:
        raise DimensionMismatch(f"rhs has length {len(rhs)}, expected {M.rows}")
    if any(isinstance(x, Poly) for x in rhs):
        raise PolynomialEntries("rhs has polynomial entries")
    rows = _sparse_rows(M)
    for r, b in zip(rows, rhs):
        if b != 0:
            r[M.cols] = b
    pivots = sparse_rref(rows)
    if M.cols in pivots:
        return None
    x = [ZERO] * M.cols
    for p, row in pivots.items():
        x[p] = row.get(M.cols, ZERO)
    null = nullspace_from_rref({p: {c: v for c, v in r.items() if c < M.cols} for p, r in pivots.items()}, M.cols)
    return LinearSolution(tuple(x), null)


def canonical_basis(vectors: Iterable[Sequence[Scalar]], ncols: int) -> tuple[Vector, ...]:
    """Reduced echelon basis of the span of rational *vectors*."""
    rows = []
    for v in vectors:
        if len(v) != ncols:
            raise DimensionMismatch(f"vector of length {len(v)} in a space of dimension {ncols}")
        row = {}
        for j, x in enumerate(v):
            if isinstance(x, Poly):
                raise PolynomialEntries("vector has polynomial entries")
            if x != 0:
                row[j] = Fraction(x)
        rows.append(row)
    pivots = sparse_rref(rows)
    return tuple(tuple(pivots[p].get(j, ZERO) for j in range(ncols)) for p in sorted(pivots))
