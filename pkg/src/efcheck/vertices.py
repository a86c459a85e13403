"""Brute-force exact vertex and extreme-ray enumeration.

Every equality is always tight at a vertex, so bases are drawn only from the
inequality rows (nonnegativity included): choose ``dim - rank(equalities)``
of them, solve, keep feasible unique solutions. Lines in the recession cone
are split off first so that the remaining part is pointed.
"""
from __future__ import annotations

import os
from fractions import Fraction
from itertools import combinations
from math import comb

from .numeric import Unique, dot, null_space, primitive_integer_vector, rank, solve_linear_system
from .polyhedron import HPolyhedron, Rel, VPolytope, contains_point, is_feasible

__all__ = ["DEFAULT_LIMIT", "VertexLimitError", "default_limit", "enumerate_vertices"]

DEFAULT_LIMIT = 2_000_000


class VertexLimitError(RuntimeError):
    pass


def default_limit() -> int:
    env = os.environ.get("EFCHECK_LIMIT_BASES")
    return int(env) if env else DEFAULT_LIMIT


def _split_rows(P: HPolyhedron):
    eqs, ineqs = [], []
    for c in P.constraints:
        if c.rel is Rel.EQ:
            eqs.append((c.coeffs, c.rhs))
        else:
            ineqs.extend((r.coeffs, r.rhs) for r in c.as_le())
    ineqs.extend((r.coeffs, r.rhs) for r in P.nonneg_rows())
    return eqs, ineqs


def enumerate_vertices(P: HPolyhedron, limit: int | None = None) -> VPolytope:
    """Vertices (sorted) and, for unbounded P, extreme rays and lineality.

    Lineality directions ``l`` are reported as the ray pair ``l, -l``; the
    vertices are then those of P intersected with the orthogonal complement
    of the lineality space. Raises :class:`VertexLimitError` when the number
    of candidate bases exceeds ``limit``.
    """
    if limit is None:
        limit = default_limit()
    if not is_feasible(P):
        return VPolytope(P.space)
    n = P.dim
    eqs, ineqs = _split_rows(P)
    lineality = null_space([a for a, _ in eqs] + [a for a, _ in ineqs], n)
    eqs = eqs + [(l, Fraction(0)) for l in lineality]
    r = rank([a for a, _ in eqs]) if eqs else 0
    k = n - r
    candidates = comb(len(ineqs), k) + (comb(len(ineqs), k - 1) if k >= 1 else 0)
    if candidates > limit:
        raise VertexLimitError(f"{candidates} candidate bases exceed the limit of {limit}")

    vertices = set()
    for subset in combinations(ineqs, k):
        rows = eqs + list(subset)
        sol = solve_linear_system([a for a, _ in rows], [b for _, b in rows])
        if isinstance(sol, Unique) and contains_point(P, sol.point):
            vertices.add(sol.point)

    rays = set()
    if k >= 1:
        homog_eq = [a for a, _ in eqs]
        for subset in combinations(ineqs, k - 1):
            basis = null_space(homog_eq + [a for a, _ in subset], n)
            if len(basis) != 1:
                continue
            d = basis[0]
            for cand in (d, tuple(-x for x in d)):
                if all(dot(a, cand) <= 0 for a, _ in ineqs):
                    rays.add(primitive_integer_vector(cand))
    for l in lineality:
        l = primitive_integer_vector(l)
        rays.add(l)
        rays.add(tuple(-x for x in l))
    return VPolytope(P.space, tuple(sorted(vertices)), tuple(sorted(rays)))
