"""Small named instances: the single-point pair in R^5 / R^3 and its maps."""
from __future__ import annotations

from fractions import Fraction

from .numeric import Matrix
from .polyhedron import Block, HPolyhedron, LinearConstraint, Rel, VarSpace

__all__ = ["W_NAMES", "X_NAMES", "U_BAR_VERTEX", "X_POINT", "u_bar", "x_point", "x_bar",
           "map_a", "map_b_printed", "u_bar_embedded", "u_prime"]

W_NAMES = ("w1", "w2", "w3", "w4", "w5")
X_NAMES = ("x1", "x2", "x3")
U_BAR_VERTEX = tuple(Fraction(v) for v in (3, 2, 0, 0, 0))
X_POINT = tuple(Fraction(v) for v in (2, 1, 5))


def u_bar() -> HPolyhedron:
    """``w >= 0, w1+w2 = 5, w1-w2 = 1, w3+w4+w5 = 0`` in the W block."""
    return HPolyhedron.from_rows(W_NAMES, [
        ([1, 1, 0, 0, 0], "=", 5),
        ([1, -1, 0, 0, 0], "=", 1),
        ([0, 0, 1, 1, 1], "=", 0),
    ], nonneg=True, block=Block.W)


def x_point() -> HPolyhedron:
    """The point (2,1,5) described by coordinate equalities."""
    return HPolyhedron.from_rows(X_NAMES, [
        ([1, 0, 0], "=", 2),
        ([0, 1, 0], "=", 1),
        ([0, 0, 1], "=", 5),
    ], nonneg=True)


def x_bar() -> HPolyhedron:
    """A five-row inequality description whose only point is (2,1,5)."""
    return HPolyhedron.from_rows(X_NAMES, [
        ([1, -1, 1], "=", 6),
        ([1, 1, 0], ">=", 3),
        ([1, 0, 1], "<=", 7),
        ([0, 1, 1], ">=", 6),
        ([1, 0, 0], "<=", 2),
    ], nonneg=True)


def map_a() -> Matrix:
    return Matrix.from_rows([
        [-1, Fraction(5, 2), 2, 3, 4],
        [1, -1, 5, 6, 7],
        [-1, 4, 8, 9, 10],
    ])


def map_b_printed() -> Matrix:
    """The 5x3 map as printed; it does *not* send (2,1,5) to (3,2,0,0,0)."""
    return Matrix.from_rows([
        [-1, 1, 1],
        [1, -1, 0],
        [3, 1, -2],
        [2, -11, 1],
        [-10, 30, 0],
    ])


def _xw_space() -> VarSpace:
    return VarSpace.of(X_NAMES, Block.X) + VarSpace.of(W_NAMES, Block.W)


def u_bar_embedded() -> HPolyhedron:
    """Ū in (x, w)-space with the x coordinates untouched (G literally zero)."""
    return u_bar().lift(_xw_space())


def u_prime() -> HPolyhedron:
    """Ū augmented with the map rows ``x - A w = 0``."""
    space = _xw_space()
    A = map_a()
    rows = []
    for i in range(3):
        coeffs = [Fraction(0)] * 8
        coeffs[i] = Fraction(1)
        for j in range(5):
            coeffs[3 + j] = -A[i, j]
        rows.append(LinearConstraint(tuple(coeffs), Rel.EQ, 0))
    return u_bar_embedded().add_constraints(rows)
