import json
from fractions import Fraction

import pytest

from efcheck import instances as inst
from efcheck.polyhedron import (Block, HPolyhedron, InfeasibleError, LinearConstraint, PolyhedronError,
                                Rel, contains_point, dump_polyhedron, equals, is_bounded, is_subset,
                                load_polyhedron, polyhedron_from_json, polyhedron_to_json,
                                remove_redundant)
from efcheck.projection import project_onto_block
from efcheck.vertices import enumerate_vertices

from helpers import corpus, unit_square


def interval(lo, hi):
    return HPolyhedron.from_rows(["x"], [([1], ">=", lo), ([1], "<=", hi)])


@pytest.mark.parametrize("P, z, expected", [
    (inst.x_bar(), (2, 1, 5), True),
    (inst.x_bar(), (0, 0, 0), False),
    (inst.u_bar(), (3, 2, 0, 0, 0), True),
    (inst.u_bar(), (3, 2, 0, 0, -1), False),
])
def test_contains_point(P, z, expected):
    assert contains_point(P, z) is expected


def test_contains_point_dimension_mismatch():
    with pytest.raises(PolyhedronError):
        contains_point(inst.x_bar(), (1, 2))


def test_is_subset_simple():
    assert is_subset(interval(0, 1), HPolyhedron.from_rows(["x"], [([1], "<=", 2)]))
    res = is_subset(interval(0, 3), HPolyhedron.from_rows(["x"], [([1], "<=", 2)]))
    assert not res
    assert res.witness == (3,)


def test_is_subset_infeasible_is_vacuous():
    res = is_subset(interval(2, 1), interval(0, 0))
    assert res.holds and res.note


def test_projection_of_w_is_subset_of_p1(W, example_1):
    proj = project_onto_block(W, Block.X).description
    assert is_subset(proj, example_1.P1)
    assert equals(proj, example_1.P1)


def test_equals_is_symmetric_and_detects_difference():
    assert equals(interval(0, 1), interval(0, 1))
    assert not equals(interval(0, 1), interval(0, 2))
    assert not equals(interval(0, 2), interval(0, 1))


def test_remove_redundant_simple():
    P = HPolyhedron.from_rows(["x"], [([1], "<=", 1), ([1], "<=", 2)], nonneg=True)
    R, removed = remove_redundant(P)
    assert [c.rhs for c in removed] == [2]
    assert len(R.constraints) == 1 and equals(R, P)


def test_remove_redundant_u_prime_is_idempotent():
    Up = inst.u_prime()
    R, _ = remove_redundant(Up)
    assert equals(R, Up)
    R2, removed2 = remove_redundant(R)
    assert removed2 == [] and R2.constraints == R.constraints
    # the three equalities of U-bar survive, as do its nonnegativity flags
    ubar_rows = [c for c in R.constraints if not any(c.coeffs[:3])]
    assert len(ubar_rows) == 3
    assert R.nonneg == Up.nonneg


def test_remove_redundant_infeasible_raises():
    with pytest.raises(InfeasibleError):
        remove_redundant(interval(2, 1))


def test_is_bounded():
    assert is_bounded(unit_square())
    assert is_bounded(inst.u_bar())


def test_p2_unbounded_along_w2(example_1):
    res = is_bounded(example_1.P2)
    assert not res
    assert res.direction == (0, 1, 0)


@pytest.mark.parametrize("name, P", sorted(corpus().items()))
def test_redundancy_removal_preserves_point_set(name, P):
    R, _ = remove_redundant(P)
    assert equals(R, P)


@pytest.mark.parametrize("name, P", sorted(corpus().items()))
def test_vertices_belong_to_polyhedron(name, P):
    for v in enumerate_vertices(P).vertices:
        assert contains_point(P, v)


def test_subset_reflexive_and_transitive():
    polys = corpus()
    by_space = {}
    for P in polys.values():
        by_space.setdefault(P.names, []).append(P)
    for P in polys.values():
        assert is_subset(P, P)
    # a chain inside one space
    a, b, c = interval(1, 2), interval(0, 3), interval(-1, 4)
    assert is_subset(a, b) and is_subset(b, c) and is_subset(a, c)
    for group in by_space.values():
        for P in group:
            for Q in group:
                for R in group:
                    if is_subset(P, Q) and is_subset(Q, R):
                        assert is_subset(P, R)


def test_constraint_normalization():
    c = LinearConstraint((Fraction(2, 3), Fraction(-4, 3)), Rel.GE, Fraction(2))
    n = c.normalized()
    assert n.rel is Rel.LE
    assert n.coeffs == (-1, 2) and n.rhs == -3


def test_json_round_trip(tmp_path):
    P = inst.u_prime()
    data = polyhedron_to_json(P)
    assert all(isinstance(c, str) for row in data["constraints"] for c in row["coeffs"])
    assert polyhedron_from_json(json.loads(json.dumps(data))) == P
    path = tmp_path / "u.json"
    dump_polyhedron(P, path)
    assert load_polyhedron(path) == P


@pytest.mark.parametrize("data", [
    {"vars": [{"name": "x"}, {"name": "x"}], "constraints": []},
    {"vars": [{"name": "x"}], "constraints": [{"coeffs": ["1", "2"], "rel": "<=", "rhs": "1"}]},
    {"vars": [{"name": "x"}], "constraints": [{"coeffs": ["1"], "rel": "<>", "rhs": "1"}]},
    {"vars": [{"name": "x", "block": "Y"}], "constraints": []},
])
def test_malformed_json_rejected(data):
    with pytest.raises(PolyhedronError):
        polyhedron_from_json(data)
