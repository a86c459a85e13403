"""Shared builders for the test modules."""
import random
from pathlib import Path

from efcheck import instances as inst
from efcheck.augmentation import build_augmentation, build_example_1
from efcheck.polyhedron import HPolyhedron, is_feasible

DATA = Path(__file__).resolve().parent.parent / "data"

# filled by test_acceptance, printed by the terminal-summary hook
ACCEPTANCE_LINES: list[str] = []


def unit_square():
    return HPolyhedron.from_rows(["x1", "x2"], [([1, 0], "<=", 1), ([0, 1], "<=", 1)], nonneg=True)


def random_bounded_polyhedron(rng: random.Random, max_vars=4, max_rows=8):
    """Nonempty polytope: a box [0, 5]^d plus random rows through a slack of an anchor."""
    while True:
        d = rng.randint(1, max_vars)
        names = [f"y{i + 1}" for i in range(d)]
        rows = [([1 if j == i else 0 for j in range(d)], "<=", 5) for i in range(d)]
        anchor = [rng.randint(0, 5) for _ in range(d)]
        for _ in range(rng.randint(0, max_rows - d)):
            coeffs = [rng.randint(-4, 4) for _ in range(d)]
            rhs = sum(a * x for a, x in zip(coeffs, anchor)) + rng.randint(0, 3)
            rows.append((coeffs, "<=", rhs))
        P = HPolyhedron.from_rows(names, rows, nonneg=True)
        if is_feasible(P):
            return P


def corpus():
    """Nonempty polyhedra used for the reflexivity/transitivity/redundancy properties."""
    spec = build_example_1()
    return {
        "u_bar": inst.u_bar(),
        "x_bar": inst.x_bar(),
        "x_point": inst.x_point(),
        "u_prime": inst.u_prime(),
        "P1": spec.P1,
        "P2": spec.P2,
        "W": build_augmentation(spec).poly,
        "square": unit_square(),
    }


def in_hull(v, points):
    """LP: is v a convex combination of points?"""
    names = [f"l{i}" for i in range(len(points))]
    rows = [([p[k] for p in points], "=", v[k]) for k in range(len(v))]
    rows.append(([1] * len(points), "=", 1))
    return is_feasible(HPolyhedron.from_rows(names, rows, nonneg=True))
