"""Mutual augmentation of two polyhedra in disjoint variables.

Given P1 = {x1 : A1 x1 <= a1} and P2 = {x2 : A2 x2 <= a2}, the polyhedron

    W = {(x1, x2, u), u >= 0 :  C1 A1 x1 <= C1 a1,
                                B1 x1 + B2 x2 - u <= 0,
                                C2 A2 x2 <= C2 a2}

projects onto P1 and onto P2, so each is "extended" by the other once the
redundant rows and the u variables are admitted.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .ef import BlockedPolyhedron
from .numeric import Matrix
from .polyhedron import (Block, HPolyhedron, LinearConstraint, PolyhedronError, Rel, VarSpace,
                         equals, is_feasible, polyhedron_to_json)
from .projection import ProjectionKind, fm_eliminate, project_onto

__all__ = ["AugmentationSpec", "MutualEFReport", "Fact", "build_augmentation",
           "demonstrate_mutual_ef", "build_example_1", "random_spec", "MIXED_CONVENTION"]

# Mixed rows use B1 against x1 and B2 against x2; the alternative reading
# (B1 x2 + B2 x1) does not type-check when B1 is q x n1.
MIXED_CONVENTION = "B1*x1 + B2*x2 - u <= 0"


@dataclass(frozen=True)
class AugmentationSpec:
    P1: HPolyhedron
    P2: HPolyhedron
    B1: Matrix
    B2: Matrix
    C1: Matrix
    C2: Matrix
    u_prefix: str = "u"

    def __post_init__(self):
        if set(self.P1.names) & set(self.P2.names):
            raise PolyhedronError("P1 and P2 must use disjoint variable names")
        p1, p2 = len(self.P1.constraints), len(self.P2.constraints)
        for label, C, p in (("C1", self.C1, p1), ("C2", self.C2, p2)):
            if C.shape != (p, p):
                raise PolyhedronError(f"{label} must be {p}x{p}, got {C.rows}x{C.cols}")
            if not C.is_diagonal() or any(d <= 0 for d in C.diag()):
                raise PolyhedronError(f"{label} must be diagonal with positive diagonal")
        if self.B1.cols != self.P1.dim or self.B2.cols != self.P2.dim:
            raise PolyhedronError("B1 must have n1 columns and B2 n2 columns")
        if self.B1.rows != self.B2.rows or self.B1.rows < 1:
            raise PolyhedronError("B1 and B2 need the same positive number of rows q")
        clash = {self.u_name(k) for k in range(self.q)} & (set(self.P1.names) | set(self.P2.names))
        if clash:
            raise PolyhedronError(f"auxiliary names clash with {sorted(clash)}")

    @property
    def q(self) -> int:
        return self.B1.rows

    def u_name(self, k: int) -> str:
        return f"{self.u_prefix}{k + 1}"

    def to_json(self) -> dict:
        return {"P1": polyhedron_to_json(self.P1), "P2": polyhedron_to_json(self.P2),
                "B1": self.B1.to_json(), "B2": self.B2.to_json(),
                "C1": self.C1.to_json(), "C2": self.C2.to_json()}


def build_augmentation(spec: AugmentationSpec) -> BlockedPolyhedron:
    """W over x1 (block X), x2 (block W) and u (block U_AUX, nonnegative).

    Row groups ``"P1"``, ``"mixed"`` and ``"P2"`` index the three families.
    """
    P1, P2 = spec.P1, spec.P2
    if not is_feasible(P1) or not is_feasible(P2):
        raise PolyhedronError("both polyhedra must be nonempty")
    q = spec.q
    u_names = tuple(spec.u_name(k) for k in range(q))
    space = (VarSpace.of(P1.names, Block.X) + VarSpace.of(P2.names, Block.W)
             + VarSpace.of(u_names, Block.U_AUX))
    n1, n2 = P1.dim, P2.dim
    zeros = lambda k: (Fraction(0),) * k  # noqa: E731

    rows = []
    for c, s in zip(P1.constraints, spec.C1.diag()):
        c = c.scaled(s)
        rows.append(LinearConstraint(c.coeffs + zeros(n2 + q), c.rel, c.rhs))
    for k in range(q):
        u = tuple(Fraction(-1) if i == k else Fraction(0) for i in range(q))
        rows.append(LinearConstraint(spec.B1.row(k) + spec.B2.row(k) + u, Rel.LE, 0))
    for c, s in zip(P2.constraints, spec.C2.diag()):
        c = c.scaled(s)
        rows.append(LinearConstraint(zeros(n1) + c.coeffs + zeros(q), c.rel, c.rhs))

    p1, p2 = len(P1.constraints), len(P2.constraints)
    groups = {"P1": tuple(range(p1)),
              "mixed": tuple(range(p1, p1 + q)),
              "P2": tuple(range(p1 + q, p1 + q + p2))}
    W = HPolyhedron(space, rows, P1.nonneg | P2.nonneg | set(u_names))
    return BlockedPolyhedron(W, P1.names, P2.names + u_names, row_groups=groups)


@dataclass(frozen=True)
class Fact:
    name: str
    holds: bool
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "holds": self.holds, "detail": self.detail}


@dataclass(frozen=True)
class MutualEFReport:
    facts: tuple
    conclusions: tuple
    convention: str = MIXED_CONVENTION
    u_elimination_induced_rows: int = 0

    @property
    def valid(self) -> bool:
        return all(f.holds for f in self.facts)

    def to_json(self) -> dict:
        return {"valid": self.valid, "convention": self.convention,
                "u_elimination_induced_rows": self.u_elimination_induced_rows,
                "facts": [f.to_json() for f in self.facts],
                "conclusions": list(self.conclusions)}


def _projection_fact(name, W: HPolyhedron, keep, target: HPolyhedron) -> Fact:
    proj = project_onto(W, keep)
    if proj.kind is ProjectionKind.EMPTY:
        return Fact(name, False, {"projection": "empty"})
    desc = proj.description.reorder(target.names)
    same = equals(desc, target)
    detail = {"projection": polyhedron_to_json(desc)}
    if not same:
        detail["witness"] = [str(v) for v in same.witness]
    return Fact(name, same.holds, detail)


def _mixed_redundant_fact(name, B: BlockedPolyhedron, keep) -> Fact:
    mixed = set(B.row_groups["mixed"])
    trimmed = B.poly.with_constraints(c for i, c in enumerate(B.poly.constraints) if i not in mixed)
    full = project_onto(B.poly, keep).description
    cut = project_onto(trimmed, keep).description
    same = equals(full, cut.reorder(full.names))
    return Fact(name, same.holds, {"rows": sorted(mixed)})


def demonstrate_mutual_ef(spec: AugmentationSpec) -> MutualEFReport:
    """Build W and check, by exact projection and containment LPs, that it
    projects onto both P1 and P2 and that the mixed rows change neither
    projection."""
    B = build_augmentation(spec)
    W = B.poly
    x1, x2 = spec.P1.names, spec.P2.names
    u_names = tuple(spec.u_name(k) for k in range(spec.q))

    facts = (
        _projection_fact("projection onto x1 equals P1", W, x1, spec.P1),
        _projection_fact("projection onto x2 equals P2", W, x2, spec.P2),
        _mixed_redundant_fact("mixed rows redundant for the x1 projection", B, x1),
        _mixed_redundant_fact("mixed rows redundant for the x2 projection", B, x2),
    )
    # u only has lower bounds, so eliminating it pairs nothing
    after_u = fm_eliminate(W, u_names, prune=False)
    induced = sum(1 for c in after_u.description.constraints
                  if c.normalized() not in {r.normalized() for r in _rows_without_u(B, u_names)})
    ok = all(f.holds for f in facts)
    conclusions = ()
    if ok:
        conclusions = ("W is equivalent to P1 and projects onto P2: "
                       "P1 is an extended formulation of P2",
                       "W is equivalent to P2 and projects onto P1: "
                       "P2 is an extended formulation of P1")
    return MutualEFReport(facts, conclusions, MIXED_CONVENTION, induced)


def _rows_without_u(B: BlockedPolyhedron, u_names) -> list[LinearConstraint]:
    W = B.poly
    keep = [j for j, n in enumerate(W.names) if n not in set(u_names)]
    return [LinearConstraint(tuple(W.constraints[i].coeffs[j] for j in keep),
                             W.constraints[i].rel, W.constraints[i].rhs)
            for i in B.row_groups["P1"] + B.row_groups["P2"]]


def build_example_1() -> AugmentationSpec:
    P1 = HPolyhedron.from_rows(["x1", "x2"], [([2, 1], "<=", 6)], nonneg=True)
    P2 = HPolyhedron.from_rows(["w1", "w2", "w3"], [
        ([18, -1, 0], "<=", 23),
        ([59, 0, 1], "<=", 84),
    ], nonneg=True, block=Block.W)
    return AugmentationSpec(
        P1=P1, P2=P2,
        B1=Matrix.from_rows([[-1, 2], [3, -4]]),
        B2=Matrix.from_rows([[5, -6, 7], [-10, 9, -8]]),
        C1=Matrix.diagonal([7]),
        C2=Matrix.diagonal([2, Fraction(1, 2)]),
    )


def _random_poly(rng: random.Random, prefix: str, block: Block, max_dim: int, lo: int, hi: int):
    n = rng.randint(1, max_dim)
    m = rng.randint(1, max_dim)
    names = [f"{prefix}{i + 1}" for i in range(n)]
    anchor = [rng.randint(0, 3) for _ in range(n)]
    rows = []
    for _ in range(m):
        coeffs = [rng.randint(lo, hi) for _ in range(n)]
        rhs = sum(a * x for a, x in zip(coeffs, anchor)) + rng.randint(0, 5)
        rows.append((coeffs, "<=", max(lo, min(hi, rhs))))
    P = HPolyhedron.from_rows(names, rows, nonneg=rng.random() < 0.5, block=block)
    return P if is_feasible(P) else None


def random_spec(rng: random.Random, max_dim: int = 3, lo: int = -10, hi: int = 10) -> AugmentationSpec:
    """Random spec with integer data in ``[lo, hi]`` and nonempty P1, P2."""
    P1 = P2 = None
    while P1 is None:
        P1 = _random_poly(rng, "x", Block.X, max_dim, lo, hi)
    while P2 is None:
        P2 = _random_poly(rng, "w", Block.W, max_dim, lo, hi)
    q = rng.randint(1, max_dim)
    B1 = Matrix.from_rows([[rng.randint(lo, hi) for _ in range(P1.dim)] for _ in range(q)])
    B2 = Matrix.from_rows([[rng.randint(lo, hi) for _ in range(P2.dim)] for _ in range(q)])
    C1 = Matrix.diagonal([rng.randint(1, hi) for _ in P1.constraints])
    C2 = Matrix.diagonal([rng.randint(1, hi) for _ in P2.constraints])
    return AugmentationSpec(P1, P2, B1, B2, C1, C2)
