import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from efcheck import instances as inst
from efcheck.auxiliary import (AuxiliaryError, LinkingMap, check_equivalence, joint_polyhedron,
                               load_link, solve_direct, solve_via_auxiliary)
from efcheck.numeric import Matrix, dot
from efcheck.polyhedron import HPolyhedron, PolyhedronError, contains_point
from efcheck.projection import project_onto

from helpers import DATA, random_bounded_polyhedron, unit_square

ALPHA = st.lists(st.fractions(min_value=-10, max_value=10, max_denominator=6), min_size=3, max_size=3)


def plain():
    return LinkingMap.linear(inst.map_a())


def shifted():
    return LinkingMap(inst.map_a(), (1, 1, 1))


def test_two_step_retrieves_the_point():
    sol = solve_via_auxiliary(inst.u_bar(), plain(), (1, 0, 0))
    assert sol.x_star == inst.X_POINT and sol.value == 2
    assert sol.w_star == inst.U_BAR_VERTEX


def test_direct_matches():
    assert solve_direct(inst.u_bar(), plain(), (1, 0, 0)) == solve_via_auxiliary(inst.u_bar(), plain(), (1, 0, 0))


def test_zero_alpha():
    for solver in (solve_via_auxiliary, solve_direct):
        assert solver(inst.u_bar(), plain(), (0, 0, 0)).value == 0
    rep = check_equivalence(inst.u_bar(), shifted(), [(0, 0, 0)])
    assert rep.holds and rep.entries[0][1] == 0


@given(ALPHA)
def test_single_point_u_gives_constant_value(alpha):
    assert solve_via_auxiliary(inst.u_bar(), plain(), alpha).value == dot(alpha, inst.X_POINT)


@given(ALPHA)
def test_shift_adds_alpha_b(alpha):
    a = solve_via_auxiliary(inst.u_bar(), plain(), alpha).value
    b = solve_via_auxiliary(inst.u_bar(), shifted(), alpha).value
    assert b - a == sum(alpha)
    assert check_equivalence(inst.u_bar(), shifted(), [alpha]).holds


def test_equivalence_notes_rank():
    rep = check_equivalence(inst.u_bar(), plain(), [(1, 2, 3)])
    assert "rank 3 < 5" in rep.notes[0]
    rep = check_equivalence(unit_square(), LinkingMap.linear(Matrix.identity(2)), [(1, 1)])
    assert "full column rank" in rep.notes[0]
    data = rep.to_json()
    assert data["checks"][0]["equal"] is True


def test_unbounded_reduced_problem(example_1):
    link = LinkingMap.linear(Matrix.from_rows([[0, 1, 0]]))
    with pytest.raises(AuxiliaryError):
        solve_via_auxiliary(example_1.P2, link, (-1,))
    with pytest.raises(AuxiliaryError, match="alpha="):
        check_equivalence(example_1.P2, link, [(-1,), (1,)])


def test_dimension_errors():
    with pytest.raises(PolyhedronError):
        solve_via_auxiliary(inst.u_bar(), plain(), (1, 0))
    with pytest.raises(PolyhedronError):
        solve_via_auxiliary(unit_square(), plain(), (1, 0, 0))
    with pytest.raises(PolyhedronError):
        LinkingMap(inst.map_a(), (1, 1))


def test_link_files():
    assert load_link(DATA / "link_A.json") == plain()
    assert load_link(DATA / "link_A_shifted.json") == shifted()
    assert LinkingMap.from_json(json.loads(json.dumps(shifted().to_json()))) == shifted()


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_random_instances(seed):
    rng = random.Random(seed)
    U = random_bounded_polyhedron(rng, max_vars=3, max_rows=6)
    p = rng.randint(1, 3)
    C = Matrix.from_rows([[rng.randint(-3, 3) for _ in range(U.dim)] for _ in range(p)])
    b = tuple(rng.randint(-3, 3) for _ in range(p))
    link = LinkingMap(C, b)
    alpha = tuple(Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(p))
    two = solve_via_auxiliary(U, link, alpha)
    direct = solve_direct(U, link, alpha)
    assert direct.value == two.value
    assert contains_point(U, two.w_star)
    # x_star lies in the projection of the joint polyhedron
    J = joint_polyhedron(U, link)
    proj = project_onto(J, J.names[:p]).description
    assert contains_point(proj, two.x_star)
    # the constant alpha^T b never moves the argmin
    assert solve_via_auxiliary(U, LinkingMap.linear(C), alpha).w_star == two.w_star
