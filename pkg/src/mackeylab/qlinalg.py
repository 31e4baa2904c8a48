# Copyright 2025 Canonical Ltd.
# See LICENSE file for licensing details.
"""Exact linear algebra over the rationals.

Matrices are dense grids of ``fractions.Fraction``. Row reduction, products and
inverses are delegated to sympy's ``DomainMatrix`` over ``QQ``; kernels,
images, complements and solutions are read off the reduced row echelon form
so that every basis choice is determined by the pivots.

Matrices act on column vectors, so ``a @ b`` is "a after b".
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from sympy import QQ
from sympy import Rational as SympyRational
from sympy.polys.matrices import DomainMatrix

from mackeylab.exceptions import ShapeMismatch

Rational = Fraction
RationalLike = Union[int, str, Fraction, SympyRational]
Vector = tuple[Fraction, ...]

logger = logging.getLogger(__name__)


def to_rational(value: RationalLike) -> Fraction:
    """Convert an exact scalar to a normalized ``Fraction``.

    Args:
        value (RationalLike): int, "p/q" string, Fraction or sympy Rational

    Returns:
        Fraction: the same number, reduced with a positive denominator

    Raises:
        TypeError: if the value is a float or not a rational scalar
    """
    match value:
        case bool() | float():
            raise TypeError(f"refusing inexact or boolean scalar {value!r}")
        case Fraction():
            return value
        case int() | str():
            return Fraction(value)
        case SympyRational():
            return Fraction(int(value.p), int(value.q))
        case _:
            raise TypeError(f"not a rational scalar: {value!r}")


def format_rational(value: Fraction) -> str:
    """Serialize a rational as "p/q" (or "p" for integers)."""
    return str(value)


@dataclass(frozen=True)
class RationalMatrix:
    """Dense exact matrix over the rationals."""

    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ShapeMismatch(f"negative shape {self.rows}x{self.cols}")
        if len(self.entries) != self.rows or any(len(row) != self.cols for row in self.entries):
            raise ShapeMismatch(f"entries do not form a {self.rows}x{self.cols} grid")

    @classmethod
    def from_rows(
        cls, rows: Sequence[Sequence[RationalLike]], cols: Optional[int] = None
    ) -> "RationalMatrix":
        """Build a matrix from a list of rows.

        Args:
            rows (Sequence[Sequence[RationalLike]]): row-major entries
            cols (Optional[int]): column count, needed only when there are no rows

        Returns:
            RationalMatrix: the matrix
        """
        width = cols if cols is not None else (len(rows[0]) if rows else 0)
        entries = tuple(tuple(to_rational(x) for x in row) for row in rows)
        return cls(len(entries), width, entries)

    @classmethod
    def from_columns(
        cls, columns: Sequence[Sequence[RationalLike]], rows: int
    ) -> "RationalMatrix":
        """Build a matrix whose columns are the given vectors.

        Args:
            columns (Sequence[Sequence[RationalLike]]): column vectors of length ``rows``
            rows (int): row count, needed when there are no columns

        Returns:
            RationalMatrix: the matrix

        Raises:
            ShapeMismatch: if a column has the wrong length
        """
        if any(len(column) != rows for column in columns):
            raise ShapeMismatch(f"columns must have length {rows}")
        entries = tuple(tuple(to_rational(column[i]) for column in columns) for i in range(rows))
        return cls(rows, len(columns), entries)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        """Zero matrix of the given shape."""
        return cls(rows, cols, tuple((Fraction(0),) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        """Identity matrix of size n."""
        return cls(
            n,
            n,
            tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)),
        )

    @classmethod
    def scalar(cls, value: RationalLike) -> "RationalMatrix":
        """1x1 matrix."""
        return cls(1, 1, ((to_rational(value),),))

    @classmethod
    def from_domain(cls, matrix: DomainMatrix) -> "RationalMatrix":
        """Convert a sympy ``DomainMatrix`` over QQ."""
        rows, cols = matrix.shape
        entries = tuple(
            tuple(to_rational(QQ.to_sympy(x)) for x in row) for row in matrix.to_list()
        )
        return cls(rows, cols, entries)

    def to_domain(self) -> DomainMatrix:
        """Convert to a sympy ``DomainMatrix`` over QQ (non-empty shapes only)."""
        return DomainMatrix(
            [[QQ(x.numerator, x.denominator) for x in row] for row in self.entries],
            (self.rows, self.cols),
            QQ,
        )

    @property
    def shape(self) -> tuple[int, int]:
        """(rows, cols)"""
        return self.rows, self.cols

    @property
    def is_empty(self) -> bool:
        """True if either dimension is zero."""
        return self.rows == 0 or self.cols == 0

    def __getitem__(self, index: tuple[int, int]) -> Fraction:
        i, j = index
        return self.entries[i][j]

    def column(self, j: int) -> Vector:
        """The j-th column as a vector."""
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list[Vector]:
        """All columns as vectors."""
        return [self.column(j) for j in range(self.cols)]

    def is_zero(self) -> bool:
        """True if every entry vanishes."""
        return all(x == 0 for row in self.entries for x in row)

    def transpose(self) -> "RationalMatrix":
        """Transposed matrix."""
        return RationalMatrix(
            self.cols,
            self.rows,
            tuple(tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)),
        )

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot compose {self.shape} with {other.shape}")
        if self.is_empty or other.is_empty:
            return RationalMatrix.zeros(self.rows, other.cols)
        return RationalMatrix.from_domain(self.to_domain().matmul(other.to_domain()))

    def _elementwise(self, other: "RationalMatrix", sign: int) -> "RationalMatrix":
        if self.shape != other.shape:
            raise ShapeMismatch(f"shapes differ: {self.shape} vs {other.shape}")
        return RationalMatrix(
            self.rows,
            self.cols,
            tuple(
                tuple(a + sign * b for a, b in zip(row, other_row))
                for row, other_row in zip(self.entries, other.entries)
            ),
        )

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        return self._elementwise(other, 1)

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return self._elementwise(other, -1)

    def __neg__(self) -> "RationalMatrix":
        return self.scale(-1)

    def scale(self, factor: RationalLike) -> "RationalMatrix":
        """Multiply every entry by a scalar."""
        c = to_rational(factor)
        return RationalMatrix(
            self.rows, self.cols, tuple(tuple(c * x for x in row) for row in self.entries)
        )

    def apply(self, vector: Sequence[RationalLike]) -> Vector:
        """Matrix-vector product."""
        if len(vector) != self.cols:
            raise ShapeMismatch(f"vector of length {len(vector)} for {self.shape} matrix")
        v = [to_rational(x) for x in vector]
        return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in self.entries)

    def hstack(self, other: "RationalMatrix") -> "RationalMatrix":
        """Concatenate columns."""
        if self.rows != other.rows:
            raise ShapeMismatch(f"row counts differ: {self.rows} vs {other.rows}")
        return RationalMatrix(
            self.rows,
            self.cols + other.cols,
            tuple(a + b for a, b in zip(self.entries, other.entries)),
        )

    def vstack(self, other: "RationalMatrix") -> "RationalMatrix":
        """Concatenate rows."""
        if self.cols != other.cols:
            raise ShapeMismatch(f"column counts differ: {self.cols} vs {other.cols}")
        return RationalMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def select_rows(self, indices: Iterable[int]) -> "RationalMatrix":
        """Submatrix made of the given rows, in order."""
        picked = tuple(self.entries[i] for i in indices)
        return RationalMatrix(len(picked), self.cols, picked)

    def with_entry(self, i: int, j: int, value: RationalLike) -> "RationalMatrix":
        """Copy of the matrix with one entry replaced."""
        grid = [list(row) for row in self.entries]
        grid[i][j] = to_rational(value)
        return RationalMatrix(self.rows, self.cols, tuple(tuple(row) for row in grid))

    def inverse(self) -> "RationalMatrix":
        """Inverse of a square invertible matrix."""
        if self.rows != self.cols:
            raise ShapeMismatch(f"cannot invert a {self.shape} matrix")
        if self.rows == 0:
            return self
        return RationalMatrix.from_domain(self.to_domain().inv())

    def to_json(self) -> list[list[str]]:
        """Rows of "p/q" strings."""
        return [[format_rational(x) for x in row] for row in self.entries]


def direct_sum(*blocks: RationalMatrix) -> RationalMatrix:
    """Block diagonal matrix.

    Args:
        blocks (RationalMatrix): diagonal blocks

    Returns:
        RationalMatrix: the block diagonal matrix
    """
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    grid = [[Fraction(0)] * cols for _ in range(rows)]
    r0 = c0 = 0
    for block in blocks:
        for i, row in enumerate(block.entries):
            grid[r0 + i][c0 : c0 + block.cols] = row
        r0 += block.rows
        c0 += block.cols
    return RationalMatrix(rows, cols, tuple(tuple(row) for row in grid))


def rref(m: RationalMatrix) -> tuple[RationalMatrix, tuple[int, ...]]:
    """Reduced row echelon form.

    Args:
        m (RationalMatrix): any matrix

    Returns:
        tuple[RationalMatrix, tuple[int, ...]]: the reduced matrix and its pivot columns
    """
    if m.is_empty:
        return m, ()
    reduced, pivots = m.to_domain().rref()
    return RationalMatrix.from_domain(reduced), tuple(pivots)


def rank(m: RationalMatrix) -> int:
    """Number of pivots of the reduced row echelon form."""
    return len(rref(m)[1])


def kernel_basis(m: RationalMatrix) -> list[Vector]:
    """Basis of the null space, one vector per free column of the rref.

    Args:
        m (RationalMatrix): any matrix

    Returns:
        list[Vector]: vectors v with m·v = 0, as many as cols - rank
    """
    reduced, pivots = rref(m)
    basis = []
    for free in (j for j in range(m.cols) if j not in pivots):
        v = [Fraction(0)] * m.cols
        v[free] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -reduced[r, free]
        basis.append(tuple(v))
    return basis


def image_basis(m: RationalMatrix) -> list[Vector]:
    """Basis of the column space: the columns of ``m`` at the pivot positions."""
    _, pivots = rref(m)
    return [m.column(p) for p in pivots]


def solve(m: RationalMatrix, b: Sequence[RationalLike]) -> Optional[Vector]:
    """Find some x with m·x = b.

    Args:
        m (RationalMatrix): coefficient matrix
        b (Sequence[RationalLike]): right hand side of length ``m.rows``

    Returns:
        Optional[Vector]: a solution (free variables set to zero) or None if inconsistent

    Raises:
        ShapeMismatch: if b has the wrong length
    """
    if len(b) != m.rows:
        raise ShapeMismatch(f"right hand side of length {len(b)} for {m.shape} matrix")
    rhs = RationalMatrix.from_columns([b], m.rows)
    reduced, pivots = rref(m.hstack(rhs))
    if m.cols in pivots:
        return None
    x = [Fraction(0)] * m.cols
    for r, p in enumerate(pivots):
        x[p] = reduced[r, m.cols]
    return tuple(x)


def solve_matrix(m: RationalMatrix, b: RationalMatrix) -> Optional[RationalMatrix]:
    """Solve m·X = B column by column; None if any column is inconsistent."""
    if b.rows != m.rows:
        raise ShapeMismatch(f"right hand side {b.shape} for {m.shape} matrix")
    solutions = []
    for column in b.columns():
        x = solve(m, column)
        if x is None:
            return None
        solutions.append(x)
    return RationalMatrix.from_columns(solutions, m.cols)


def complement(subspace: RationalMatrix) -> RationalMatrix:
    """Standard basis vectors completing the columns of ``subspace`` to a basis.

    The chosen vectors are the pivots beyond the subspace in the rref of
    ``[subspace | identity]``.

    Args:
        subspace (RationalMatrix): n x r matrix with independent columns

    Returns:
        RationalMatrix: n x (n - r) matrix of standard basis columns
    """
    n = subspace.rows
    _, pivots = rref(subspace.hstack(RationalMatrix.identity(n)))
    extra = [p - subspace.cols for p in pivots if p >= subspace.cols]
    identity = RationalMatrix.identity(n)
    return RationalMatrix.from_columns([identity.column(j) for j in extra], n)


def quotient_coordinates(subspace: RationalMatrix) -> tuple[RationalMatrix, RationalMatrix]:
    """Projection onto, and section of, the quotient by a subspace.

    Args:
        subspace (RationalMatrix): n x r matrix with independent columns

    Returns:
        tuple[RationalMatrix, RationalMatrix]: (P, E) where P is (n-r) x n with kernel the
        subspace and E is the n x (n-r) complement with P·E = identity
    """
    section = complement(subspace)
    basis = subspace.hstack(section)
    inverse = basis.inverse()
    projection = inverse.select_rows(range(subspace.cols, subspace.rows))
    logger.debug("quotient of dimension %d by a %d-dim subspace", section.cols, subspace.cols)
    return projection, section
