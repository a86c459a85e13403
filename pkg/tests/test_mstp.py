import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from efcheck.mstp import (GraphError, Model, WeightedGraph, build_edmonds, build_martin,
                          build_martin_restated, check_subtour_redundancy, complete_graph,
                          default_roots, kruskal, load_graph, paradox_demo, parse_graph,
                          random_connected_graph, recover_x, solve_model)
from efcheck.polyhedron import contains_point

from helpers import DATA


def path3():
    return WeightedGraph(3, ((1, 2, 5), (2, 3, 7)))


def brute_force_mst(g):
    """Cheapest acyclic (n-1)-edge subset; independent of Kruskal."""
    best = None
    for T in combinations(g.edges, g.n - 1):
        parent = list(range(g.n + 1))

        def find(v):
            while parent[v] != v:
                v = parent[v]
            return v
        ok = True
        for i, j, _ in T:
            a, b = find(i), find(j)
            if a == b:
                ok = False
                break
            parent[a] = b
        if ok:
            w = sum(c for _, _, c in T)
            best = w if best is None else min(best, w)
    return best


def rational_costs(rng, m):
    return [Fraction(rng.randint(1, 40), rng.randint(1, 6)) for _ in range(m)]


class TestGraphs:
    @pytest.mark.parametrize("g, weight", [
        (complete_graph(3, [1, 2, 3]), 3),
        (path3(), 12),
        (complete_graph(4), 3),
    ])
    def test_kruskal(self, g, weight):
        assert kruskal(g)[0] == weight
        assert len(kruskal(g)[1]) == g.n - 1

    def test_disconnected(self):
        with pytest.raises(GraphError, match="connected"):
            WeightedGraph(4, ((1, 2, 1), (3, 4, 1)))

    @pytest.mark.parametrize("edges", [((1, 1, 1),), ((1, 2, 1), (2, 1, 3)), ((1, 5, 1),)])
    def test_invalid_edges(self, edges):
        with pytest.raises(GraphError):
            WeightedGraph(2, edges)

    def test_parse_round_trip(self):
        g = complete_graph(4, [1, Fraction(1, 2), 3, 4, 5, 6])
        assert parse_graph(g.to_text()) == g
        assert load_graph(DATA / "k3.txt") == complete_graph(3, [1, 2, 3])

    @pytest.mark.parametrize("text, where", [
        ("n 3\n1 2 1\n1 x 2\n", "line 3"),
        ("m 3\n", "line 1"),
        ("n 3\n1 2\n", "line 2"),
    ])
    def test_parse_errors_name_the_line(self, text, where):
        with pytest.raises(GraphError, match=where):
            parse_graph(text)

    @given(st.integers(0, 10**6), st.integers(2, 6))
    def test_kruskal_matches_brute_force(self, seed, n):
        rng = random.Random(seed)
        g = random_connected_graph(rng, n)
        g = g.with_costs(rational_costs(rng, len(g.edges)))
        assert kruskal(g)[0] == brute_force_mst(g)


class TestFormulations:
    def test_edmonds_counts(self):
        assert build_edmonds(complete_graph(3)).n_rows == 4
        assert build_edmonds(complete_graph(4)).n_rows == 11

    def test_edmonds_size_guard(self):
        g = WeightedGraph(17, tuple((i, i + 1, 1) for i in range(1, 17)))
        with pytest.raises(GraphError):
            build_edmonds(g)

    def test_martin_counts(self):
        K3 = build_martin(complete_graph(3))
        assert K3.n_vars == 21
        assert sum(1 for n in K3.var_index if n.startswith("z_")) == 18
        assert build_martin(complete_graph(4)).n_rows == 41

    def test_restated_counts(self):
        f = build_martin_restated(complete_graph(3))
        assert f.label is Model.MARTIN_Q_PRIME
        assert f.n_vars == 18
        assert not any(n.startswith("x_") for n in f.var_index)

    def test_default_roots(self):
        assert default_roots(complete_graph(3)) == {(1, 2): 3, (1, 3): 2, (2, 3): 1}

    def test_invalid_roots(self):
        g = complete_graph(3)
        with pytest.raises(GraphError):
            build_martin_restated(g, {(1, 2): 1, (1, 3): 2, (2, 3): 1})
        with pytest.raises(GraphError):
            build_martin_restated(WeightedGraph(2, ((1, 2, 1),)))

    @pytest.mark.parametrize("builder", [build_edmonds, build_martin, build_martin_restated])
    def test_triangle_value(self, builder):
        assert solve_model(builder(complete_graph(3, [1, 2, 3]))).value == 3

    @pytest.mark.parametrize("builder", [build_edmonds, build_martin])
    def test_path_value(self, builder):
        assert solve_model(builder(path3())).value == 12

    def test_recovered_x_is_edmonds_feasible(self):
        for seed in range(5):
            rng = random.Random(seed)
            g = complete_graph(4, rational_costs(rng, 6))
            f = build_martin_restated(g)
            x = recover_x(g, f, solve_model(f).point)
            assert contains_point(build_edmonds(g).lp.feasible_set, x)
            assert sum(c * xe for (_, _, c), xe in zip(g.edges, x)) == kruskal(g)[0]


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6), st.integers(3, 5))
def test_all_models_agree(seed, n):
    rng = random.Random(seed)
    g = random_connected_graph(rng, n)
    g = g.with_costs(rational_costs(rng, len(g.edges)))
    weight = kruskal(g)[0]
    for builder in (build_edmonds, build_martin, build_martin_restated):
        assert solve_model(builder(g)).value == weight


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6))
def test_root_choice_is_irrelevant(seed):
    rng = random.Random(seed)
    g = complete_graph(4, rational_costs(rng, 6))
    roots = {(i, j): rng.choice([v for v in g.vertices if v not in (i, j)]) for i, j, _ in g.edges}
    assert solve_model(build_martin_restated(g, roots)).value == \
        solve_model(build_martin_restated(g)).value


class TestRedundancyAndParadox:
    @pytest.mark.parametrize("n, count", [(3, 3), (4, 10)])
    def test_subtour_rows_redundant(self, n, count):
        rep = check_subtour_redundancy(complete_graph(n))
        assert rep.holds and len(rep.entries) == count
        assert all(v <= b for _, v, b in rep.entries)

    def test_size_guards(self):
        with pytest.raises(GraphError):
            check_subtour_redundancy(complete_graph(7))
        with pytest.raises(GraphError):
            paradox_demo(complete_graph(6))

    def test_k4_paradox(self):
        rep = paradox_demo(complete_graph(4, [3, 1, 4, 1, 5, 9]))
        assert rep.counts["edmonds"]["rows"] == 11
        assert rep.counts["martin"]["rows"] == 41
        assert rep.counts["martin_augmented"]["rows"] == 51
        assert rep.counts["martin_restated"]["vars"] < rep.counts["martin"]["vars"]
        assert rep.restated_has_no_x and rep.all_equal
        assert rep.to_json()["optima"]["kruskal"] == "6"

    def test_k3_optimum_invariant(self):
        rep = paradox_demo(complete_graph(3, [1, 2, 3]))
        assert set(rep.optima.values()) == {3}
