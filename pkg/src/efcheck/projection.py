"""Fourier-Motzkin elimination and block projection."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .polyhedron import (Block, HPolyhedron, LinearConstraint, PolyhedronError, Rel,
                         is_feasible, polyhedron_to_json, remove_redundant)

__all__ = ["ProjectionKind", "ProjectionResult", "fm_eliminate", "eliminate_variable",
           "project_onto_block", "project_onto"]


class ProjectionKind(str, enum.Enum):
    POLYHEDRON = "polyhedron"
    FULL_SPACE = "full_space"
    EMPTY = "empty"


@dataclass(frozen=True)
class ProjectionResult:
    kind: ProjectionKind
    description: Optional[HPolyhedron]
    kept: tuple = ()

    @property
    def is_full_space(self) -> bool:
        return self.kind is ProjectionKind.FULL_SPACE

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "kept": list(self.kept),
                "description": polyhedron_to_json(self.description) if self.description else None}


def _elimination_cost(P: HPolyhedron, j: int) -> tuple:
    if any(c.rel is Rel.EQ and c.coeffs[j] for c in P.constraints):
        return (0, 0)
    pos = neg = 0
    for c in P.constraints:
        for r in c.as_le():
            a = r.coeffs[j]
            pos += a > 0
            neg += a < 0
    if P.names[j] in P.nonneg:
        neg += 1
    return (1, pos * neg)


def eliminate_variable(P: HPolyhedron, name: str) -> HPolyhedron:
    """Project out one variable, without redundancy pruning.

    An equality mentioning the variable is used for exact substitution;
    otherwise rows are paired Fourier-Motzkin style.
    """
    j = P.space.index(name)
    rows = list(P.constraints)
    if name in P.nonneg:
        e = [Fraction(0)] * P.dim
        e[j] = Fraction(-1)
        rows.append(LinearConstraint(tuple(e), Rel.LE, 0))
    pivot = next((c for c in rows if c.rel is Rel.EQ and c.coeffs[j]), None)
    new_rows: list[LinearConstraint] = []
    if pivot is not None:
        for c in rows:
            if c is pivot:
                continue
            f = c.coeffs[j] / pivot.coeffs[j]
            if f:
                c = LinearConstraint(tuple(a - f * b for a, b in zip(c.coeffs, pivot.coeffs)),
                                     c.rel, c.rhs - f * pivot.rhs)
            new_rows.append(c)
    else:
        pos, neg = [], []
        for c in rows:
            if not c.coeffs[j]:
                new_rows.append(c)
                continue
            for r in c.as_le():
                (pos if r.coeffs[j] > 0 else neg).append(r)
        for p in pos:
            for q in neg:
                fp, fq = 1 / p.coeffs[j], 1 / -q.coeffs[j]
                new_rows.append(LinearConstraint(
                    tuple(fp * a + fq * b for a, b in zip(p.coeffs, q.coeffs)),
                    Rel.LE, fp * p.rhs + fq * q.rhs))
    keep = [k for k in range(P.dim) if k != j]
    out = []
    for c in new_rows:
        coeffs = tuple(c.coeffs[k] for k in keep)
        if not any(coeffs):
            if not LinearConstraint((), c.rel, c.rhs).satisfied_by(()):
                raise PolyhedronError("elimination produced a contradiction on a feasible input")
            continue
        out.append(LinearConstraint(coeffs, c.rel, c.rhs))
    space = P.space.subspace(P.names[k] for k in keep)
    return HPolyhedron(space, out, P.nonneg - {name}).canonical()


def fm_eliminate(P: HPolyhedron, drop_vars: Iterable[str], order: Sequence[str] | None = None,
                 prune: bool = True) -> ProjectionResult:
    """Exact projection of P onto the variables not in ``drop_vars``.

    After each single-variable step the description is pruned with LP
    redundancy tests. Without an explicit ``order`` the next variable is the
    one with the fewest generated rows (equality substitution first).
    """
    drop = list(dict.fromkeys(drop_vars))
    for name in drop:
        P.space.index(name)
    if order is not None:
        if sorted(order) != sorted(drop):
            raise PolyhedronError("elimination order must list exactly the dropped variables")
        drop = list(order)
    kept = tuple(n for n in P.names if n not in set(drop))
    if not is_feasible(P):
        return ProjectionResult(ProjectionKind.EMPTY, None, kept)
    current = P.canonical()
    if prune:
        current = remove_redundant(current)[0]
    remaining = list(drop)
    while remaining:
        if order is None:
            name = min(remaining, key=lambda n: _elimination_cost(current, current.space.index(n)))
        else:
            name = remaining[0]
        remaining.remove(name)
        current = eliminate_variable(current, name)
        if prune:
            current = remove_redundant(current)[0]
    current = current.canonical()
    if not current.constraints and not current.nonneg:
        return ProjectionResult(ProjectionKind.FULL_SPACE, current, kept)
    return ProjectionResult(ProjectionKind.POLYHEDRON, current, kept)


def project_onto(P: HPolyhedron, keep: Iterable[str], **kwargs) -> ProjectionResult:
    keep = set(keep)
    for name in keep:
        P.space.index(name)
    return fm_eliminate(P, [n for n in P.names if n not in keep], **kwargs)


def project_onto_block(P, block: Block | str, **kwargs) -> ProjectionResult:
    """Projection onto the variables carrying ``block``'s label.

    ``P`` may be an :class:`HPolyhedron` or anything with a ``poly`` attribute.
    """
    poly = getattr(P, "poly", P)
    try:
        block = Block(block)
    except ValueError:
        raise PolyhedronError(f"unknown block label {block!r}") from None
    return project_onto(poly, poly.space.names_in(block), **kwargs)
