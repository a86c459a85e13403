"""Optimizing over X through a reformulation U and the linking graph
``L = {(x, w) : x - C w = b}``.

The two-step route minimizes ``(alpha^T C) w`` over U and reads off
``x = C w + b``; the direct route minimizes ``alpha^T x`` over the joint
polyhedron. Their values differ by nothing once the constant ``alpha^T b`` is
added back.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import lp
from .numeric import Matrix, as_vector, dot, format_rational, format_vector, rank
from .polyhedron import Block, HPolyhedron, LinearConstraint, PolyhedronError, Rel, VarSpace

__all__ = ["LinkingMap", "AuxiliaryError", "AuxiliarySolution", "solve_via_auxiliary",
           "solve_direct", "check_equivalence", "EquivalenceReport", "load_link"]


class AuxiliaryError(RuntimeError):
    pass


@dataclass(frozen=True)
class LinkingMap:
    C: Matrix
    b: tuple

    def __post_init__(self):
        object.__setattr__(self, "b", as_vector(self.b))
        if len(self.b) != self.C.rows:
            raise PolyhedronError(f"b has length {len(self.b)}, C has {self.C.rows} rows")

    @classmethod
    def linear(cls, C: Matrix) -> LinkingMap:
        return cls(C, (0,) * C.rows)

    @property
    def p(self) -> int:
        return self.C.rows

    @property
    def q(self) -> int:
        return self.C.cols

    def to_json(self) -> dict:
        return {"C": self.C.to_json(), "b": format_vector(self.b)}

    @classmethod
    def from_json(cls, data: dict) -> LinkingMap:
        C = Matrix.from_json(data["C"])
        return cls(C, data.get("b", [0] * C.rows))


def load_link(path) -> LinkingMap:
    with open(path) as fh:
        return LinkingMap.from_json(json.load(fh))


@dataclass(frozen=True)
class AuxiliarySolution:
    w_star: tuple
    x_star: tuple
    value: Fraction

    def to_json(self) -> dict:
        return {"w": format_vector(self.w_star), "x": format_vector(self.x_star),
                "value": format_rational(self.value)}


def _check(U: HPolyhedron, link: LinkingMap, alpha) -> tuple:
    alpha = as_vector(alpha)
    if link.q != U.dim:
        raise PolyhedronError(f"C has {link.q} columns but U has {U.dim} variables")
    if len(alpha) != link.p:
        raise PolyhedronError(f"alpha has {len(alpha)} entries, expected {link.p}")
    return alpha


def _optimal(out: lp.LPOutcome, what: str) -> lp.LPOutcome:
    if out.status is not lp.Status.OPTIMAL:
        raise AuxiliaryError(f"{what} is {out.status.value}")
    return out


def solve_via_auxiliary(U: HPolyhedron, link: LinkingMap, alpha) -> AuxiliarySolution:
    alpha = _check(U, link, alpha)
    reduced = tuple(dot(alpha, link.C.col(j)) for j in range(link.q))
    out = _optimal(lp.minimize(U, reduced), "the reduced problem over U")
    w = out.point
    x = tuple(cx + bx for cx, bx in zip(link.C.apply(w), link.b))
    value = out.value + dot(alpha, link.b)
    if value != dot(alpha, x):
        raise AssertionError("retrieved x does not reproduce the objective")
    return AuxiliarySolution(w, x, value)


def joint_polyhedron(U: HPolyhedron, link: LinkingMap, x_names: Sequence[str] | None = None) -> HPolyhedron:
    """``{(x, w) : x - C w = b, w in U}`` with x free."""
    if x_names is None:
        prefix = "x"
        while any(f"{prefix}{i + 1}" in U.names for i in range(link.p)):
            prefix += "_"
        x_names = tuple(f"{prefix}{i + 1}" for i in range(link.p))
    space = VarSpace.of(x_names, Block.X) + U.space
    lifted = U.lift(space)
    rows = []
    for i in range(link.p):
        coeffs = [Fraction(0)] * len(space)
        coeffs[i] = Fraction(1)
        for j in range(link.q):
            coeffs[link.p + j] = -link.C[i, j]
        rows.append(LinearConstraint(tuple(coeffs), Rel.EQ, link.b[i]))
    return lifted.add_constraints(rows)


def solve_direct(U: HPolyhedron, link: LinkingMap, alpha) -> AuxiliarySolution:
    alpha = _check(U, link, alpha)
    J = joint_polyhedron(U, link)
    out = _optimal(lp.minimize(J, alpha + (Fraction(0),) * U.dim), "the joint problem")
    x, w = out.point[:link.p], out.point[link.p:]
    return AuxiliarySolution(w, x, out.value)


@dataclass(frozen=True)
class EquivalenceReport:
    holds: bool
    entries: tuple  # ((alpha, direct value, reduced value, offset), ...)
    notes: tuple = ()

    def to_json(self) -> dict:
        return {"holds": self.holds, "notes": list(self.notes),
                "checks": [{"alpha": format_vector(a), "direct": format_rational(d),
                            "two_step": format_rational(t), "offset": format_rational(o),
                            "reduced": format_rational(t - o),
                            "equal": d == t}
                           for a, d, t, o in self.entries]}


def check_equivalence(U: HPolyhedron, link: LinkingMap, alphas: Iterable) -> EquivalenceReport:
    """Direct value against two-step value for each alpha, exactly.

    Raises :class:`AuxiliaryError` listing every alpha whose problems were
    infeasible or unbounded.
    """
    entries, failures = [], []
    for alpha in alphas:
        alpha = as_vector(alpha)
        try:
            direct = solve_direct(U, link, alpha)
            two_step = solve_via_auxiliary(U, link, alpha)
        except AuxiliaryError as exc:
            failures.append(f"alpha={format_vector(alpha)}: {exc}")
            continue
        entries.append((alpha, direct.value, two_step.value, dot(alpha, link.b)))
    if failures:
        raise AuxiliaryError("; ".join(failures))
    notes = []
    if rank(link.C) == link.q:
        notes.append("C has full column rank: x = Cw + b is one-to-one on U")
    else:
        notes.append(f"C has rank {rank(link.C)} < {link.q}: one-to-one correspondence not established")
    return EquivalenceReport(all(d == t for _, d, t, _ in entries), tuple(entries), tuple(notes))
