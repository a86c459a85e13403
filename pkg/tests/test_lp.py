import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from efcheck import lp
from efcheck.mstp import build_edmonds, complete_graph
from efcheck.numeric import dot
from efcheck.polyhedron import HPolyhedron, contains_point
from efcheck.vertices import enumerate_vertices

from helpers import random_bounded_polyhedron, unit_square


def vertex_max(P, c):
    return max(dot(c, v) for v in enumerate_vertices(P).vertices)


def test_max_over_p1(example_1):
    out = lp.maximize(example_1.P1, (2, 1))
    assert out.status is lp.Status.OPTIMAL
    assert out.value == 6
    assert contains_point(example_1.P1, out.point)


def test_max_w2_over_p2_is_unbounded(example_1):
    out = lp.maximize(example_1.P2, (0, 1, 0))
    assert out.status is lp.Status.UNBOUNDED
    assert out.value is None
    assert out.ray[1] > 0
    # the ray is a recession direction of P2
    for c in example_1.P2.constraints:
        assert dot(c.coeffs, out.ray) <= 0
    assert all(r >= 0 for r in out.ray)


def test_edmonds_triangle():
    f = build_edmonds(complete_graph(3, [1, 2, 3]))
    out = lp.solve(f.lp)
    assert out.optimal and out.value == 3


def test_infeasible():
    P = HPolyhedron.from_rows(["x"], [([1], "<=", -1)], nonneg=True)
    out = lp.minimize(P, (1,))
    assert out.status is lp.Status.INFEASIBLE
    assert lp.find_feasible_point(P) is None


def test_free_variables_and_equalities():
    P = HPolyhedron.from_rows(["x", "y"], [([1, 1], "=", -3), ([1, -1], ">=", 1)])
    out = lp.maximize(P, (1, 0))
    assert out.status is lp.Status.UNBOUNDED
    out = lp.minimize(P, (1, 0))
    assert out.optimal and out.value == -1
    out = lp.maximize(P, (0, 1))
    assert out.optimal and out.value == -2 and out.point == (-1, -2)


def test_beale_cycling_example_terminates():
    # classic instance on which textbook Dantzig pivoting cycles
    rows = [
        ([Fraction(1, 4), -8, -1, 9], "<=", 0),
        ([Fraction(1, 2), -12, Fraction(-1, 2), 3], "<=", 0),
        ([0, 0, 1, 0], "<=", 1),
    ]
    P = HPolyhedron.from_rows(["a", "b", "c", "d"], rows, nonneg=True)
    c = (Fraction(-3, 4), 20, Fraction(-1, 2), 6)
    out = lp.minimize(P, c)
    assert out.optimal
    assert out.value == Fraction(-5, 4)
    assert out.iterations < out.iteration_cap
    assert out.value == -vertex_max(P, tuple(-x for x in c))


def test_objective_dimension_checked():
    with pytest.raises(ValueError):
        lp.LPProblem((1, 2, 3), "max", unit_square())


def test_redundant_equalities_are_handled():
    P = HPolyhedron.from_rows(["x", "y"], [([1, 1], "=", 2), ([2, 2], "=", 4), ([1, 0], "<=", 1)],
                              nonneg=True)
    out = lp.minimize(P, (0, 1))
    assert out.optimal and out.value == 1


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_optimum_matches_vertex_oracle_and_duality_flip(seed, c):
    P = random_bounded_polyhedron(random.Random(seed))
    c = tuple(c[:P.dim])
    hi = lp.maximize(P, c)
    assert hi.optimal
    assert hi.value == vertex_max(P, c) == dot(c, hi.point)
    assert hi.iterations <= hi.iteration_cap
    lo = lp.minimize(P, tuple(-x for x in c))
    assert lo.optimal and lo.value == -hi.value
