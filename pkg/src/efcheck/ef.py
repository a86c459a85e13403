"""Checkers for the three competing definitions of an extended formulation.

* ``STANDARD``: the projection of U onto the x coordinates equals X.
* ``IFF``: x is in X exactly when some w puts (x, w) in U. Same set
  equality as ``STANDARD``, but each direction is reported separately.
* ``LINEAR_MAP``: some linear map sends U onto X. Decided through vertices,
  so U must be bounded.

Also here: the per-instance "effective G = 0" detector, which asks whether
every row touching the x block can be dropped as LP-redundant.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Any, Mapping, Optional, Sequence

from . import lp
from .numeric import Inconsistent, Matrix, dot, format_vector, solve_linear_system
from .polyhedron import (Block, HPolyhedron, LinearConstraint, PolyhedronError, Rel, VarSpace,
                         contains_point, equals, is_bounded, is_feasible, is_redundant, is_subset,
                         InfeasibleError, polyhedron_to_json)
from .projection import ProjectionKind, ProjectionResult, project_onto
from .vertices import enumerate_vertices

__all__ = ["Definition", "BlockedPolyhedron", "LinearMapWitness", "EFVerdict",
           "UnboundedPolyhedronError", "detect_effective_G_zero", "check_ef_standard",
           "check_ef_iff", "check_ef_linear_map", "verify_map_image", "check_ef",
           "point_outside", "fit_linear_map"]

FULL_SPACE_NOTE = "projection onto the x block is all of R^p, so it cannot equal a bounded X"


class UnboundedPolyhedronError(PolyhedronError):
    pass


class Definition(str, enum.Enum):
    STANDARD = "standard"
    LINEAR_MAP = "map"
    IFF = "iff"


@dataclass(frozen=True)
class BlockedPolyhedron:
    """An H-polyhedron whose variables are split into an x block and a w block.

    ``row_groups`` optionally names ranges of constraint indices (used by the
    augmentation construction to tag its three row families).
    """
    poly: HPolyhedron
    x_block: tuple
    w_block: tuple
    row_groups: Mapping[str, tuple] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "x_block", tuple(self.x_block))
        object.__setattr__(self, "w_block", tuple(self.w_block))
        names = set(self.poly.names)
        if set(self.x_block) & set(self.w_block):
            raise PolyhedronError("x and w blocks overlap")
        missing = (set(self.x_block) | set(self.w_block)) - names
        if missing:
            raise PolyhedronError(f"block variables not in the space: {sorted(missing)}")

    @classmethod
    def from_labels(cls, poly: HPolyhedron, **kwargs) -> BlockedPolyhedron:
        """x block = variables labelled X; w block = everything else."""
        x = poly.space.names_in(Block.X)
        return cls(poly, x, tuple(n for n in poly.names if n not in x), **kwargs)

    @property
    def p(self) -> int:
        return len(self.x_block)

    @property
    def q(self) -> int:
        return len(self.w_block)

    def rows(self, group: str) -> list[LinearConstraint]:
        return [self.poly.constraints[i] for i in self.row_groups[group]]


def _as_blocked(U) -> BlockedPolyhedron:
    return U if isinstance(U, BlockedPolyhedron) else BlockedPolyhedron.from_labels(U)


@dataclass(frozen=True)
class LinearMapWitness:
    M: Matrix
    assignment: tuple  # ((u_vertex, x_vertex), ...)

    def to_json(self) -> dict:
        return {"M": self.M.to_json(),
                "assignment": [{"from": format_vector(u), "to": format_vector(x)}
                               for u, x in self.assignment]}


@dataclass(frozen=True)
class EFVerdict:
    definition: Definition
    holds: Optional[bool]          # None means undecided (search limit hit)
    witness: Any = None
    notes: tuple = ()
    counterexample: Optional[tuple] = None

    @property
    def decided(self) -> bool:
        return self.holds is not None

    def to_json(self) -> dict:
        w = self.witness
        if hasattr(w, "to_json"):
            w = w.to_json()
        return {"definition": self.definition.value,
                "holds": self.holds,
                "witness": w,
                "counterexample": format_vector(self.counterexample) if self.counterexample else None,
                "notes": list(self.notes)}


def _x_rows(P: HPolyhedron, xs: set) -> list[int]:
    idx = [P.space.index(n) for n in xs]
    return [i for i, c in enumerate(P.constraints) if any(c.coeffs[j] for j in idx)]


def detect_effective_G_zero(U) -> tuple[bool, Optional[HPolyhedron]]:
    """Remove LP-redundant x-involving rows until nothing changes.

    Nonnegativity flags on x variables count as x-involving rows. True when
    none survive; the reduced description then lives on the non-x variables.
    """
    U = _as_blocked(U)
    P = U.poly
    if not is_feasible(P):
        raise InfeasibleError("effective-G=0 detection needs a nonempty U")
    xs = set(U.x_block)
    changed = True
    while changed:
        changed = False
        for i in _x_rows(P, xs):
            if is_redundant(P, i):
                P = P.without(i)
                changed = True
                break
        if changed:
            continue
        for name in sorted(P.nonneg & xs, key=P.space.index):
            e = [0] * P.dim
            e[P.space.index(name)] = 1
            out = lp.minimize(P.without_nonneg(name), e)
            if out.status is lp.Status.OPTIMAL and out.value >= 0:
                P = P.without_nonneg(name)
                changed = True
                break
    if _x_rows(P, xs) or (P.nonneg & xs):
        return False, None
    keep = [n for n in P.names if n not in xs]
    idx = [P.space.index(n) for n in keep]
    reduced = HPolyhedron(P.space.subspace(keep),
                          [LinearConstraint(tuple(c.coeffs[j] for j in idx), c.rel, c.rhs)
                           for c in P.constraints],
                          P.nonneg - xs)
    return True, reduced


def _check_target(U: BlockedPolyhedron, X: HPolyhedron) -> None:
    if sorted(X.names) != sorted(U.x_block):
        raise PolyhedronError(
            f"target variables {X.names} do not match the x block {U.x_block}")


def point_outside(X: HPolyhedron) -> Optional[tuple]:
    """Some point not in X, built from its first nontrivial row; None if X is R^p."""
    for c in X.constraints:
        norm2 = dot(c.coeffs, c.coeffs)
        if not norm2:
            continue
        target = c.rhs - 1 if c.rel is Rel.GE else c.rhs + 1
        return tuple(a * target / norm2 for a in c.coeffs)
    for j, n in enumerate(X.names):
        if n in X.nonneg:
            return tuple(Fraction(-1) if k == j else Fraction(0) for k in range(X.dim))
    return None


def _compare(U: BlockedPolyhedron, X: HPolyhedron):
    """Projection onto x plus the two containment directions."""
    _check_target(U, X)
    proj = project_onto(U.poly, U.x_block)
    X = X.reorder(U.x_block)
    if proj.kind is ProjectionKind.EMPTY:
        empty_x = not is_feasible(X)
        forward = (True, None)  # empty projection is inside anything
        backward = (empty_x, None if empty_x else lp.find_feasible_point(X))
        return proj, forward, backward
    desc = proj.description.reorder(U.x_block)
    if proj.kind is ProjectionKind.FULL_SPACE:
        out = point_outside(X)
        forward = (out is None, out)
    else:
        sub = is_subset(desc, X)
        forward = (sub.holds, sub.witness)
    sub = is_subset(X, desc)
    backward = (sub.holds, sub.witness)
    return proj, forward, backward


def check_ef_standard(U, X: HPolyhedron) -> EFVerdict:
    """Does the projection of U onto its x block equal X?"""
    U = _as_blocked(U)
    proj, fwd, back = _compare(U, X)
    notes = []
    if proj.kind is ProjectionKind.FULL_SPACE:
        notes.append(FULL_SPACE_NOTE)
    holds = fwd[0] and back[0]
    cex = None
    if not fwd[0]:
        cex = fwd[1]
        notes.append("projection contains points outside X")
    elif not back[0]:
        cex = back[1]
        notes.append("X contains points outside the projection")
    return EFVerdict(Definition.STANDARD, holds, proj, tuple(notes), cex)


def check_ef_iff(U, X: HPolyhedron) -> EFVerdict:
    """Membership equivalence, with each implication checked on its own.

    "x in X => some w fits" is X ⊆ projection; "some w fits => x in X" is
    projection ⊆ X. When the x rows are effectively absent the second
    implication is the one that breaks.
    """
    U = _as_blocked(U)
    proj, fwd, back = _compare(U, X)
    notes = [f"x in X => exists w: {'holds' if back[0] else 'fails'}",
             f"exists w => x in X: {'holds' if fwd[0] else 'fails'}"]
    if proj.kind is ProjectionKind.FULL_SPACE:
        notes.append(FULL_SPACE_NOTE)
        if not fwd[0]:
            notes.append("x rows are absent, so a feasible w certifies every x; "
                         "the reverse implication cannot hold for bounded X")
    cex = fwd[1] if not fwd[0] else (back[1] if not back[0] else None)
    return EFVerdict(Definition.IFF, fwd[0] and back[0], proj, tuple(notes), cex)


def _bounded_vertices(P: HPolyhedron, role: str) -> tuple:
    if not is_feasible(P):
        raise InfeasibleError(f"{role} is empty")
    b = is_bounded(P)
    if not b:
        raise UnboundedPolyhedronError(
            f"{role} is unbounded (direction {format_vector(b.direction)}); "
            "the vertex-based map check needs a polytope")
    return enumerate_vertices(P).vertices


def _map_lp(u_vertices, assignment, X: HPolyhedron, n: int) -> Optional[Matrix]:
    """Find M (X.dim x n) with M u = x on assigned pairs and M v in X for all v."""
    p = X.dim
    names = [f"M[{r},{c}]" for r in range(p) for c in range(n)]
    rows = []

    def image_row(v, weights):
        coeffs = [Fraction(0)] * (p * n)
        for r in range(p):
            if weights[r]:
                for c in range(n):
                    coeffs[r * n + c] += weights[r] * v[c]
        return coeffs

    unit = [[Fraction(int(r == s)) for s in range(p)] for r in range(p)]
    for ui, xj in assignment:
        for r in range(p):
            rows.append((image_row(ui, unit[r]), "=", xj[r]))
    for v in u_vertices:
        for c in X.constraints:
            rows.append((image_row(v, c.coeffs), c.rel, c.rhs))
        for r, name in enumerate(X.names):
            if name in X.nonneg:
                rows.append((image_row(v, unit[r]), ">=", 0))
    problem = HPolyhedron.from_rows(names, rows)
    point = lp.find_feasible_point(problem)
    if point is None:
        return None
    return Matrix(p, n, point)


def check_ef_linear_map(U, X: HPolyhedron, search_limit: int = 100_000) -> EFVerdict:
    """Search for a linear map sending U onto X.

    The vertices of X must be images of distinct vertices of U, so each
    injection from X-vertices into U-vertices fixes part of M; one LP then
    asks for M matching those pairs with every U-vertex image inside X.
    This is complete for bounded U, so an exhausted search is a refutation.
    """
    poly = getattr(U, "poly", U)
    uv = _bounded_vertices(poly, "U")
    xv = _bounded_vertices(X, "X")
    n = poly.dim
    if len(xv) > len(uv):
        return EFVerdict(Definition.LINEAR_MAP, False, None,
                         (f"X has {len(xv)} vertices but U only {len(uv)}; no surjection exists",))
    tried = 0
    for perm in permutations(range(len(uv)), len(xv)):
        if tried >= search_limit:
            return EFVerdict(Definition.LINEAR_MAP, None, None,
                             (f"search limit {search_limit} reached; undecided",))
        tried += 1
        assignment = tuple((uv[i], xv[j]) for j, i in enumerate(perm))
        M = _map_lp(uv, assignment, X, n)
        if M is not None:
            return EFVerdict(Definition.LINEAR_MAP, True, LinearMapWitness(M, assignment),
                             (f"witness found after {tried} assignment(s)",))
    return EFVerdict(Definition.LINEAR_MAP, False, None,
                     (f"all {tried} vertex assignments infeasible",))


def verify_map_image(U, M: Matrix, X: HPolyhedron) -> tuple[bool, dict]:
    """Independent check that M maps U onto X.

    Every U-vertex image must lie in X, and every X-vertex must be a convex
    combination of the images.
    """
    poly = getattr(U, "poly", U)
    if M.cols != poly.dim or M.rows != X.dim:
        raise PolyhedronError(f"map is {M.rows}x{M.cols}, expected {X.dim}x{poly.dim}")
    uv = _bounded_vertices(poly, "U")
    images = [M.apply(v) for v in uv]
    inside = [contains_point(X, y) for y in images]
    xv = enumerate_vertices(X).vertices if is_feasible(X) else ()
    covered = []
    for x in xv:
        k = len(images)
        rows = [([1] * k, "=", 1)]
        for r in range(X.dim):
            rows.append(([img[r] for img in images], "=", x[r]))
        hull = HPolyhedron.from_rows([f"l{i}" for i in range(k)], rows, nonneg=True)
        covered.append(is_feasible(hull))
    ok = all(inside) and all(covered)
    report = {
        "images": [{"vertex": format_vector(v), "image": format_vector(y), "in_target": i}
                   for v, y, i in zip(uv, images, inside)],
        "target_vertices": [{"vertex": format_vector(x), "covered": c} for x, c in zip(xv, covered)],
        "holds": ok,
    }
    return ok, report


def check_ef(definition: Definition | str, U, X: HPolyhedron, search_limit: int = 100_000) -> EFVerdict:
    definition = Definition(definition)
    if definition is Definition.STANDARD:
        return check_ef_standard(U, X)
    if definition is Definition.IFF:
        return check_ef_iff(U, X)
    return check_ef_linear_map(U, X, search_limit)


def fit_linear_map(pairs) -> Optional[Matrix]:
    """Some M with ``M u = x`` for every ``(u, x)`` pair, or None.

    Solves for the entries of M (row-major) as one exact linear system and
    returns the particular solution with free entries at zero.
    """
    pairs = [(tuple(u), tuple(x)) for u, x in pairs]
    n, p = len(pairs[0][0]), len(pairs[0][1])
    rows, rhs = [], []
    for u, x in pairs:
        for r in range(p):
            row = [Fraction(0)] * (p * n)
            row[r * n:(r + 1) * n] = u
            rows.append(row)
            rhs.append(x[r])
    sol = solve_linear_system(rows, rhs)
    if isinstance(sol, Inconsistent):
        return None
    return Matrix(p, n, sol.point if hasattr(sol, "point") else sol.particular)
