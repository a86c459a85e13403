"""Exact rational scalars, vectors and matrices.

Scalars are :class:`fractions.Fraction`, which is always kept in lowest terms
with a positive denominator, so equality and hashing are structural. Vectors
are plain tuples of fractions.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Union

Rational = Fraction
Vector = tuple  # tuple[Fraction, ...]
Number = Union[Fraction, int, str, float]

__all__ = [
    "Rational", "Matrix", "Unique", "Parametric", "Inconsistent",
    "as_rational", "as_vector", "format_rational", "format_vector",
    "rref", "rank", "null_space", "solve_linear_system", "dot",
    "primitive_integer_vector",
]


def as_rational(value: Number) -> Fraction:
    """Convert an int, Fraction, decimal string or ``"p/q"`` string exactly.

    Floats go through their shortest repr, so ``0.5`` becomes ``1/2`` and
    ``2.5`` becomes ``5/2`` rather than a binary expansion.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def as_vector(values: Iterable[Number]) -> tuple:
    return tuple(as_rational(v) for v in values)


def format_rational(q: Fraction) -> str:
    # "3" for integers, "p/q" otherwise
    return str(q)


def format_vector(v: Iterable[Fraction]) -> list[str]:
    return [format_rational(q) for q in v]


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    return sum((x * y for x, y in zip(a, b) if x and y), Fraction(0))


def primitive_integer_vector(v: Sequence[Fraction]) -> tuple:
    """Positive multiple of ``v`` with coprime integer entries."""
    den = 1
    for q in v:
        den = den * q.denominator // gcd(den, q.denominator)
    ints = [int(q * den) for q in v]
    g = 0
    for n in ints:
        g = gcd(g, abs(n))
    if g == 0:
        return tuple(Fraction(0) for _ in v)
    return tuple(Fraction(n // g) for n in ints)


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimension")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[Number]], cols: int | None = None) -> Matrix:
        grid = [as_vector(r) for r in rows]
        if cols is None:
            cols = len(grid[0]) if grid else 0
        for r in grid:
            if len(r) != cols:
                raise ValueError("ragged matrix rows")
        return cls(len(grid), cols, tuple(q for r in grid for q in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Matrix:
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls.diagonal([1] * n)

    @classmethod
    def diagonal(cls, diag: Iterable[Number]) -> Matrix:
        d = as_vector(diag)
        n = len(d)
        return cls.from_rows(
            [[d[i] if i == j else 0 for j in range(n)] for i in range(n)], cols=n)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list[tuple]:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> Matrix:
        return Matrix.from_rows([self.col(j) for j in range(self.cols)], cols=self.rows)

    @property
    def T(self) -> Matrix:
        return self.transpose()

    def is_diagonal(self) -> bool:
        return self.rows == self.cols and all(
            self[i, j] == 0 for i in range(self.rows) for j in range(self.cols) if i != j)

    def diag(self) -> tuple:
        return tuple(self[i, i] for i in range(min(self.rows, self.cols)))

    def apply(self, v: Sequence[Number]) -> tuple:
        v = as_vector(v)
        if len(v) != self.cols:
            raise ValueError(f"cannot apply {self.rows}x{self.cols} matrix to length-{len(v)} vector")
        return tuple(dot(self.row(i), v) for i in range(self.rows))

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = [other.col(j) for j in range(other.cols)]
            return Matrix.from_rows(
                [[dot(self.row(i), c) for c in cols] for i in range(self.rows)],
                cols=other.cols)
        return self.apply(other)

    def to_json(self) -> list[list[str]]:
        return [format_vector(r) for r in self.to_rows()]

    @classmethod
    def from_json(cls, data) -> Matrix:
        return cls.from_rows(data)

    def __str__(self) -> str:
        return "\n".join(" ".join(format_vector(r)) for r in self.to_rows())


@dataclass(frozen=True)
class Unique:
    point: tuple


@dataclass(frozen=True)
class Parametric:
    particular: tuple
    basis: tuple  # tuple of null-space vectors


@dataclass(frozen=True)
class Inconsistent:
    pass


def _grid(A) -> list[list[Fraction]]:
    if isinstance(A, Matrix):
        return [list(r) for r in A.to_rows()]
    return [list(as_vector(r)) for r in A]


def rref(A, ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns.

    Pivots are chosen as the first nonzero entry in each column; with exact
    arithmetic no numerical pivoting strategy is needed.
    """
    M = _grid(A)
    if ncols is None:
        ncols = len(M[0]) if M else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(M):
            break
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        if piv != 1:
            M[r] = [x / piv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    return M, pivots


def rank(A) -> int:
    """Exact row rank over the rationals."""
    return len(rref(A)[1])


def null_space(A, ncols: int | None = None) -> list[tuple]:
    """Basis of ``{x : A x = 0}``, one vector per free column."""
    grid = _grid(A)
    if ncols is None:
        ncols = len(grid[0]) if grid else 0
    R, pivots = rref(grid, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -R[i][f]
        basis.append(tuple(v))
    return basis


def solve_linear_system(A, b: Sequence[Number]):
    """Solve ``A x = b`` exactly.

    Returns :class:`Unique`, :class:`Parametric` (particular solution with the
    free variables at zero, plus a null-space basis) or :class:`Inconsistent`.
    """
    grid = _grid(A)
    b = as_vector(b)
    if len(grid) != len(b):
        raise ValueError(f"A has {len(grid)} rows but b has length {len(b)}")
    if isinstance(A, Matrix):
        ncols = A.cols
    else:
        ncols = len(grid[0]) if grid else 0
    aug = [row + [rhs] for row, rhs in zip(grid, b)]
    R, pivots = rref(aug, ncols)
    for row in R[len(pivots):]:
        if row[ncols] != 0:
            return Inconsistent()
    x = [Fraction(0)] * ncols
    for i, pc in enumerate(pivots):
        x[pc] = R[i][ncols]
    if len(pivots) == ncols:
        return Unique(tuple(x))
    return Parametric(tuple(x), tuple(null_space(grid, ncols)))
