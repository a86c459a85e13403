"""Exact two-phase simplex over the rationals.

The tableau is stored sparsely (one dict per row) because the formulations
this package builds, Martin's spanning-tree model in particular, have very
few nonzeros per row. Pivoting uses Bland's rule, which guarantees
termination with exact arithmetic.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import TYPE_CHECKING, Optional, Sequence

from .numeric import as_vector, dot

if TYPE_CHECKING:
    from .polyhedron import HPolyhedron

__all__ = ["Sense", "Status", "LPProblem", "LPOutcome", "IterationLimitError",
           "solve", "maximize", "minimize", "find_feasible_point"]

ZERO = Fraction(0)
ONE = Fraction(1)


class Sense(str, enum.Enum):
    MIN = "min"
    MAX = "max"


class Status(str, enum.Enum):
    OPTIMAL = "optimal"
    UNBOUNDED = "unbounded"
    INFEASIBLE = "infeasible"


class IterationLimitError(RuntimeError):
    """Raised when the pivot cap is hit; Bland's rule should make this unreachable."""


@dataclass(frozen=True)
class LPProblem:
    objective: tuple
    sense: Sense
    feasible_set: "HPolyhedron"

    def __post_init__(self):
        object.__setattr__(self, "objective", as_vector(self.objective))
        object.__setattr__(self, "sense", Sense(self.sense))
        if len(self.objective) != self.feasible_set.dim:
            raise ValueError(
                f"objective has {len(self.objective)} entries, space has {self.feasible_set.dim}")


@dataclass(frozen=True)
class LPOutcome:
    status: Status
    value: Optional[Fraction] = None
    point: Optional[tuple] = None
    ray: Optional[tuple] = None
    iterations: int = 0
    iteration_cap: int = 0

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL


@dataclass
class _Tableau:
    rows: list          # list[dict[int, Fraction]]
    rhs: list           # list[Fraction]
    basis: list         # list[int]
    d: dict = field(default_factory=dict)   # reduced costs, minimisation
    z: Fraction = ZERO                       # current objective value
    iterations: int = 0
    cap: int = 0

    def column(self, j: int) -> list:
        return [(i, a) for i, row in enumerate(self.rows) if (a := row.get(j))]

    def pivot(self, r: int, j: int) -> None:
        self.iterations += 1
        if self.iterations > self.cap:
            raise IterationLimitError(f"simplex exceeded {self.cap} pivots")
        prow = self.rows[r]
        piv = prow[j]
        if piv != 1:
            inv = 1 / piv
            prow = {k: v * inv for k, v in prow.items()}
            self.rows[r] = prow
            self.rhs[r] *= inv
        prhs = self.rhs[r]
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            f = row.get(j)
            if not f:
                continue
            for k, v in prow.items():
                nv = row.get(k, ZERO) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
            self.rhs[i] -= f * prhs
        f = self.d.get(j)
        if f:
            for k, v in prow.items():
                nv = self.d.get(k, ZERO) - f * v
                if nv:
                    self.d[k] = nv
                else:
                    self.d.pop(k, None)
            self.z += f * prhs
        self.basis[r] = j

    def run(self, allowed) -> Optional[int]:
        """Pivot to optimality. Returns the entering column on unboundedness."""
        while True:
            entering = min((j for j, v in self.d.items() if v < 0 and allowed(j)), default=None)
            if entering is None:
                return None
            best = None
            for i, a in self.column(entering):
                if a > 0:
                    key = (self.rhs[i] / a, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return entering
            self.pivot(best[1], entering)

    def set_costs(self, cost: dict) -> None:
        d = dict(cost)
        z = ZERO
        for i, b in enumerate(self.basis):
            cb = cost.get(b)
            if not cb:
                continue
            for k, v in self.rows[i].items():
                nv = d.get(k, ZERO) - cb * v
                if nv:
                    d[k] = nv
                else:
                    d.pop(k, None)
            z += cb * self.rhs[i]
        self.d = d
        self.z = z


def _standard_form(P: "HPolyhedron"):
    """Translate to ``min c y, A y = b, y >= 0, b >= 0``.

    Returns rows, rhs, an initial partial basis (row -> slack column or None)
    and the column map ``orig[j] = [(col, sign), ...]``.
    """
    n = P.dim
    orig: list[list[tuple[int, int]]] = []
    ncols = 0
    for name in P.space.names:
        if name in P.nonneg:
            orig.append([(ncols, 1)])
            ncols += 1
        else:
            orig.append([(ncols, 1), (ncols + 1, -1)])
            ncols += 2
    rows, rhs, start = [], [], []
    for con in P.constraints:
        row: dict[int, Fraction] = {}
        for j in range(n):
            a = con.coeffs[j]
            if a:
                for col, s in orig[j]:
                    row[col] = a if s > 0 else -a
        b = con.rhs
        slack_sign = 0
        if con.rel.value == "<=":
            slack_sign = 1
        elif con.rel.value == ">=":
            slack_sign = -1
        slack = None
        if slack_sign:
            slack = ncols
            ncols += 1
            row[slack] = Fraction(slack_sign)
        if b < 0 or (b == 0 and slack_sign < 0):
            row = {k: -v for k, v in row.items()}
            b = -b
            slack_sign = -slack_sign
        rows.append(row)
        rhs.append(b)
        start.append(slack if slack_sign > 0 else None)
    return rows, rhs, start, orig, ncols


def _recover(vec: dict, orig) -> tuple:
    return tuple(sum((vec.get(col, ZERO) * s for col, s in cols), ZERO) for cols in orig)


def solve(problem: LPProblem) -> LPOutcome:
    """Solve exactly. Optimal outcomes carry a feasible point whose objective
    equals ``value``; unbounded ones carry a feasible point and an improving
    recession direction."""
    P = problem.feasible_set
    rows, rhs, start, orig, ncols = _standard_form(P)
    m = len(rows)
    cap = 10 * (m + ncols + m) ** 2 + 10
    basis = []
    artificial = set()
    for i, s in enumerate(start):
        if s is None:
            a = ncols + len(artificial)
            rows[i][a] = ONE
            artificial.add(a)
            basis.append(a)
        else:
            basis.append(s)
    T = _Tableau(rows, rhs, basis, cap=cap)

    if artificial:
        T.set_costs({a: ONE for a in artificial})
        T.run(lambda j: True)
        if T.z > 0:
            return LPOutcome(Status.INFEASIBLE, iterations=T.iterations, iteration_cap=cap)
        # drive zero-level artificials out of the basis; drop dependent rows
        i = 0
        while i < len(T.rows):
            if T.basis[i] in artificial:
                j = min((k for k in T.rows[i] if k not in artificial), default=None)
                if j is None:
                    del T.rows[i], T.rhs[i], T.basis[i]
                    continue
                T.pivot(i, j)
            i += 1
        for row in T.rows:
            for a in artificial:
                row.pop(a, None)

    sign = 1 if problem.sense is Sense.MIN else -1
    cost: dict[int, Fraction] = {}
    for j, c in enumerate(problem.objective):
        if c:
            for col, s in orig[j]:
                cost[col] = sign * c * s
    T.set_costs(cost)
    entering = T.run(lambda j: j not in artificial)

    point = _recover({b: T.rhs[i] for i, b in enumerate(T.basis)}, orig)
    if entering is not None:
        direction = {entering: ONE}
        for i, a in T.column(entering):
            direction[T.basis[i]] = -a
        return LPOutcome(Status.UNBOUNDED, point=point, ray=_recover(direction, orig),
                         iterations=T.iterations, iteration_cap=cap)
    value = dot(problem.objective, point)
    if sign * value != T.z:
        raise AssertionError("simplex bookkeeping drifted from the recovered point")
    return LPOutcome(Status.OPTIMAL, value=value, point=point,
                     iterations=T.iterations, iteration_cap=cap)


def maximize(P: "HPolyhedron", c: Sequence) -> LPOutcome:
    return solve(LPProblem(tuple(c), Sense.MAX, P))


def minimize(P: "HPolyhedron", c: Sequence) -> LPOutcome:
    return solve(LPProblem(tuple(c), Sense.MIN, P))


def find_feasible_point(P: "HPolyhedron") -> Optional[tuple]:
    out = solve(LPProblem((0,) * P.dim, Sense.MIN, P))
    return out.point if out.status is Status.OPTIMAL else None
