"""Spanning-tree LP models: Edmonds' subtour formulation, Martin's compact
formulation, and the restatement of Martin's model without edge variables.
"""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Optional

from . import lp
from .lp import LPProblem, Sense
from .numeric import as_rational, format_rational, format_vector
from .polyhedron import Block, HPolyhedron, LinearConstraint, Rel, VarSpace, contains_point

__all__ = ["WeightedGraph", "GraphError", "Model", "MSTPFormulation", "kruskal",
           "build_edmonds", "build_martin", "build_martin_restated", "default_roots",
           "recover_x", "check_subtour_redundancy", "RedundancyReport", "paradox_demo",
           "ParadoxReport", "solve_model", "complete_graph", "random_connected_graph",
           "parse_graph", "load_graph", "SUBSET_NOTE", "EDMONDS_MAX_N"]

EDMONDS_MAX_N = 16
SUBSET_NOTE = ("subtour rows are indexed by vertex subsets S with 2 <= |S| <= n-1 "
               "(vertex subsets, not edge subsets)")


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class WeightedGraph:
    n: int
    edges: tuple  # ((i, j, cost), ...) with i < j, vertices 1..n

    def __post_init__(self):
        edges = []
        seen = set()
        for i, j, c in self.edges:
            i, j = int(i), int(j)
            if i == j:
                raise GraphError(f"self-loop at vertex {i}")
            if i > j:
                i, j = j, i
            if not (1 <= i and j <= self.n):
                raise GraphError(f"edge ({i},{j}) outside vertices 1..{self.n}")
            if (i, j) in seen:
                raise GraphError(f"duplicate edge ({i},{j})")
            seen.add((i, j))
            edges.append((i, j, as_rational(c)))
        object.__setattr__(self, "edges", tuple(edges))
        if not self.connected():
            raise GraphError("graph is not connected")

    def connected(self) -> bool:
        if self.n <= 1:
            return True
        adj = {v: set() for v in range(1, self.n + 1)}
        for i, j, _ in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        stack, seen = [1], {1}
        while stack:
            v = stack.pop()
            for w in adj[v] - seen:
                seen.add(w)
                stack.append(w)
        return len(seen) == self.n

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def neighbors(self, v: int) -> list[int]:
        out = []
        for i, j, _ in self.edges:
            if i == v:
                out.append(j)
            elif j == v:
                out.append(i)
        return sorted(out)

    def with_costs(self, costs: Iterable) -> WeightedGraph:
        costs = list(costs)
        if len(costs) != len(self.edges):
            raise GraphError("one cost per edge required")
        return WeightedGraph(self.n, tuple((i, j, c) for (i, j, _), c in zip(self.edges, costs)))

    def costs(self) -> tuple:
        return tuple(c for _, _, c in self.edges)

    def to_text(self) -> str:
        lines = [f"n {self.n}"]
        lines += [f"{i} {j} {format_rational(c)}" for i, j, c in self.edges]
        return "\n".join(lines) + "\n"


def complete_graph(n: int, costs: Iterable | None = None) -> WeightedGraph:
    pairs = list(combinations(range(1, n + 1), 2))
    costs = [1] * len(pairs) if costs is None else list(costs)
    return WeightedGraph(n, tuple((i, j, c) for (i, j), c in zip(pairs, costs)))


def random_connected_graph(rng: random.Random, n: int, extra: float = 0.5) -> WeightedGraph:
    """A random spanning tree plus each remaining pair with probability ``extra``."""
    order = list(range(1, n + 1))
    rng.shuffle(order)
    pairs = set()
    for k in range(1, n):
        a, b = order[k], order[rng.randrange(k)]
        pairs.add((min(a, b), max(a, b)))
    for i, j in combinations(range(1, n + 1), 2):
        if (i, j) not in pairs and rng.random() < extra:
            pairs.add((i, j))
    return WeightedGraph(n, tuple((i, j, 1) for i, j in sorted(pairs)))


def parse_graph(text: str) -> WeightedGraph:
    """Parse ``n <count>`` followed by ``i j cost`` lines; ``#`` starts a comment."""
    n = None
    edges = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if n is None:
                if len(parts) != 2 or parts[0] != "n":
                    raise GraphError("expected header 'n <count>'")
                n = int(parts[1])
                continue
            if len(parts) != 3:
                raise GraphError("expected 'i j cost'")
            i, j = sorted((int(parts[0]), int(parts[1])))
            if i == j:
                raise GraphError(f"self-loop at vertex {i}")
            if i < 1 or j > n:
                raise GraphError(f"edge ({i},{j}) outside vertices 1..{n}")
            if (i, j) in seen:
                raise GraphError(f"duplicate edge ({i},{j})")
            seen.add((i, j))
            edges.append((i, j, as_rational(parts[2])))
        except (ValueError, GraphError) as exc:
            raise GraphError(f"line {lineno}, column 1: {exc}") from None
    if n is None:
        raise GraphError("line 1, column 1: missing header 'n <count>'")
    return WeightedGraph(n, tuple(edges))


def load_graph(path) -> WeightedGraph:
    with open(path) as fh:
        return parse_graph(fh.read())


def kruskal(g: WeightedGraph) -> tuple[Fraction, tuple]:
    """Minimum spanning tree weight and edges (ties broken by edge order)."""
    parent = {v: v for v in g.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    tree = []
    total = Fraction(0)
    for i, j, c in sorted(g.edges, key=lambda e: (e[2], e[0], e[1])):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            tree.append((i, j))
            total += c
    if len(tree) != g.n - 1:
        raise GraphError("graph is not connected")
    return total, tuple(tree)


class Model(str, enum.Enum):
    EDMONDS_P = "edmonds"
    MARTIN_Q = "martin"
    MARTIN_Q_PRIME = "martin-restated"


@dataclass(frozen=True)
class MSTPFormulation:
    label: Model
    lp: LPProblem
    var_index: Mapping[str, int]
    notes: tuple = ()

    @property
    def n_rows(self) -> int:
        return len(self.lp.feasible_set.constraints)

    @property
    def n_vars(self) -> int:
        return self.lp.feasible_set.dim


def x_name(i: int, j: int) -> str:
    return f"x_{i}_{j}"


def z_name(k: int, i: int, j: int) -> str:
    return f"z_{k}_{i}_{j}"


class _Builder:
    def __init__(self, names):
        self.names = list(names)
        self.index = {n: k for k, n in enumerate(self.names)}
        self.rows: list[LinearConstraint] = []

    def row(self, terms: Mapping[str, object], rel: str, rhs) -> None:
        coeffs = [Fraction(0)] * len(self.names)
        for name, a in terms.items():
            coeffs[self.index[name]] += as_rational(a)
        self.rows.append(LinearConstraint(tuple(coeffs), rel, rhs))

    def finish(self, label, objective: Mapping[str, object], notes=()) -> MSTPFormulation:
        P = HPolyhedron(VarSpace.of(self.names), self.rows, frozenset(self.names))
        c = [Fraction(0)] * len(self.names)
        for name, a in objective.items():
            c[self.index[name]] += as_rational(a)
        return MSTPFormulation(label, LPProblem(tuple(c), Sense.MIN, P), dict(self.index), tuple(notes))


def _gamma(g: WeightedGraph, S: set) -> list[tuple[int, int]]:
    return [(i, j) for i, j, _ in g.edges if i in S and j in S]


def subtour_sets(n: int):
    for size in range(2, n):
        yield from combinations(range(1, n + 1), size)


def build_edmonds(g: WeightedGraph) -> MSTPFormulation:
    if g.n > EDMONDS_MAX_N:
        raise GraphError(f"n = {g.n} exceeds the subset guard of {EDMONDS_MAX_N}")
    b = _Builder(x_name(i, j) for i, j, _ in g.edges)
    b.row({x_name(i, j): 1 for i, j, _ in g.edges}, "=", g.n - 1)
    for S in subtour_sets(g.n):
        b.row({x_name(i, j): 1 for i, j in _gamma(g, set(S))}, "<=", len(S) - 1)
    return b.finish(Model.EDMONDS_P, {x_name(i, j): c for i, j, c in g.edges}, (SUBSET_NOTE,))


def _z_names(g: WeightedGraph) -> list[str]:
    return [z_name(k, a, b) for k in g.vertices for i, j, _ in g.edges for a, b in ((i, j), (j, i))]


def _martin_tail(b: _Builder, g: WeightedGraph, edge_value) -> None:
    """Rows shared by Q and Q': edge consistency per root, outdegree bounds."""
    for k in g.vertices:
        for i, j, _ in g.edges:
            terms = {z_name(k, i, j): 1, z_name(k, j, i): 1}
            for name, a in edge_value(i, j).items():
                terms[name] = terms.get(name, 0) - a
            b.row(terms, "=", 0)
    for k in g.vertices:
        for i in g.vertices:
            if i != k:
                b.row({z_name(k, i, s): 1 for s in g.neighbors(i)}, "<=", 1)
    for k in g.vertices:
        b.row({z_name(k, k, s): 1 for s in g.neighbors(k)}, "<=", 0)


def build_martin(g: WeightedGraph) -> MSTPFormulation:
    """x_e plus z_{k,i,j} for every root k and both orientations of each edge."""
    b = _Builder([x_name(i, j) for i, j, _ in g.edges] + _z_names(g))
    b.row({x_name(i, j): 1 for i, j, _ in g.edges}, "=", g.n - 1)
    _martin_tail(b, g, lambda i, j: {x_name(i, j): 1})
    return b.finish(Model.MARTIN_Q, {x_name(i, j): c for i, j, c in g.edges})


def default_roots(g: WeightedGraph) -> dict:
    """Lowest-numbered vertex that is not an end of each edge."""
    if g.n < 3:
        raise GraphError("restating needs n >= 3")
    return {(i, j): min(v for v in g.vertices if v not in (i, j)) for i, j, _ in g.edges}


def build_martin_restated(g: WeightedGraph, roots: Mapping | None = None) -> MSTPFormulation:
    """Martin's model with x_e replaced by z_{r_e,i,j} + z_{r_e,j,i}."""
    if g.n < 3:
        raise GraphError("restating needs n >= 3")
    roots = dict(default_roots(g) if roots is None else roots)
    for i, j, _ in g.edges:
        r = roots.get((i, j))
        if r is None or r in (i, j) or not 1 <= r <= g.n:
            raise GraphError(f"invalid root {r} for edge ({i},{j})")

    def edge_value(i, j):
        r = roots[(i, j)]
        return {z_name(r, i, j): 1, z_name(r, j, i): 1}

    b = _Builder(_z_names(g))
    first: dict[str, int] = {}
    objective: dict[str, Fraction] = {}
    for i, j, c in g.edges:
        for name in edge_value(i, j):
            first[name] = first.get(name, 0) + 1
            objective[name] = objective.get(name, 0) + c
    b.row(first, "=", g.n - 1)
    _martin_tail(b, g, edge_value)
    return b.finish(Model.MARTIN_Q_PRIME, objective,
                    ("roots: " + ", ".join(f"{i}-{j}:{r}" for (i, j), r in sorted(roots.items())),))


def recover_x(g: WeightedGraph, restated: MSTPFormulation, point, roots: Mapping | None = None) -> tuple:
    roots = dict(default_roots(g) if roots is None else roots)
    idx = restated.var_index
    return tuple(point[idx[z_name(roots[(i, j)], i, j)]] + point[idx[z_name(roots[(i, j)], j, i)]]
                 for i, j, _ in g.edges)


def solve_model(f: MSTPFormulation) -> lp.LPOutcome:
    out = lp.solve(f.lp)
    if out.status is not lp.Status.OPTIMAL:
        raise RuntimeError(f"{f.label.value} model did not solve to optimality: {out.status.value}")
    return out


@dataclass(frozen=True)
class RedundancyReport:
    holds: bool
    entries: tuple  # ((S, max value, |S|-1), ...)
    note: str = SUBSET_NOTE

    def to_json(self) -> dict:
        return {"holds": self.holds, "note": self.note,
                "subsets": [{"S": list(S), "max": format_rational(v), "bound": b}
                            for S, v, b in self.entries]}


def check_subtour_redundancy(g: WeightedGraph, max_n: int = 6) -> RedundancyReport:
    """Maximize each subtour row's left side over Martin's polyhedron."""
    if g.n > max_n:
        raise GraphError(f"n = {g.n} exceeds {max_n}")
    Q = build_martin(g)
    P = Q.lp.feasible_set
    entries = []
    for S in subtour_sets(g.n):
        c = [Fraction(0)] * P.dim
        for i, j in _gamma(g, set(S)):
            c[Q.var_index[x_name(i, j)]] = Fraction(1)
        out = lp.maximize(P, c)
        if out.status is not lp.Status.OPTIMAL:
            raise RuntimeError(f"subtour LP for S={S} returned {out.status.value}")
        entries.append((S, out.value, len(S) - 1))
    return RedundancyReport(all(v <= b for _, v, b in entries), tuple(entries))


@dataclass(frozen=True)
class ParadoxReport:
    counts: dict
    optima: dict
    all_equal: bool
    restated_has_no_x: bool
    notes: tuple = ()

    def to_json(self) -> dict:
        return {"counts": self.counts,
                "optima": {k: format_rational(v) for k, v in self.optima.items()},
                "all_equal": self.all_equal, "restated_has_no_x": self.restated_has_no_x,
                "notes": list(self.notes)}


def paradox_demo(g: WeightedGraph, max_n: int = 5) -> ParadoxReport:
    """Counts and optima for P, Q, Q' and Q augmented with every subtour row."""
    if g.n > max_n:
        raise GraphError(f"n = {g.n} exceeds {max_n}")
    P = build_edmonds(g)
    Q = build_martin(g)
    Qr = build_martin_restated(g)
    # augment Q by the subtour rows of P (the degree equality is already in Q)
    QP = Q.lp.feasible_set
    extra = []
    for S in subtour_sets(g.n):
        coeffs = [Fraction(0)] * QP.dim
        for i, j in _gamma(g, set(S)):
            coeffs[Q.var_index[x_name(i, j)]] = Fraction(1)
        extra.append(LinearConstraint(tuple(coeffs), Rel.LE, len(S) - 1))
    aug = MSTPFormulation(Q.label, LPProblem(Q.lp.objective, Sense.MIN, QP.add_constraints(extra)),
                          Q.var_index, ("Q augmented with the subtour rows",))
    counts = {
        "edmonds": {"rows": P.n_rows, "vars": P.n_vars},
        "martin": {"rows": Q.n_rows, "vars": Q.n_vars},
        "martin_restated": {"rows": Qr.n_rows, "vars": Qr.n_vars,
                            "x_vars": sum(1 for n in Qr.var_index if n.startswith("x_"))},
        "martin_augmented": {"rows": aug.n_rows, "vars": aug.n_vars},
    }
    optima = {
        "edmonds": solve_model(P).value,
        "martin": solve_model(Q).value,
        "martin_restated": solve_model(Qr).value,
        "martin_augmented": solve_model(aug).value,
        "kruskal": kruskal(g)[0],
    }
    notes = (SUBSET_NOTE,
             "Q' carries no edge variables: the x rows of Q are recoverable from z alone")
    return ParadoxReport(counts, optima, len(set(optima.values())) == 1,
                         counts["martin_restated"]["x_vars"] == 0, notes)
