"""One-shot reproduction of every worked instance, as a JSON-ready report.

Random parts (cost vectors, objective directions, augmentation specs) are
drawn from ``random.Random(seed)`` so a fixed seed gives identical output.
"""
from __future__ import annotations

import random
from fractions import Fraction

from . import instances as inst
from .augmentation import build_example_1, demonstrate_mutual_ef, random_spec
from .auxiliary import LinkingMap, check_equivalence, solve_via_auxiliary
from .ef import (BlockedPolyhedron, check_ef_iff, check_ef_linear_map, check_ef_standard,
                 detect_effective_G_zero, fit_linear_map, verify_map_image)
from .mstp import (build_edmonds, build_martin, build_martin_restated, check_subtour_redundancy,
                   complete_graph, kruskal, paradox_demo, solve_model)
from .numeric import format_rational, format_vector
from .vertices import enumerate_vertices

__all__ = ["paper_suite", "random_alpha"]


def random_alpha(rng: random.Random, p: int) -> tuple:
    return tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(p))


def _claim(name: str, passed: bool, **detail) -> dict:
    return {"claim": name, "passed": bool(passed), **detail}


def _counterexample() -> list[dict]:
    U, X, A = inst.u_bar(), inst.x_point(), inst.map_a()
    verts = enumerate_vertices(U).vertices
    ok, image = verify_map_image(U, A, X)
    std = check_ef_standard(inst.u_bar_embedded(), X)
    iff = check_ef_iff(inst.u_bar_embedded(), X)
    lin = check_ef_linear_map(U, X)
    g0, _ = detect_effective_G_zero(inst.u_bar_embedded())
    return [
        _claim("vertices of U-bar are {(3,2,0,0,0)}", verts == (inst.U_BAR_VERTEX,),
               vertices=[format_vector(v) for v in verts]),
        _claim("A maps U-bar onto X", ok, report=image),
        _claim("embedded U-bar has effective G = 0", g0),
        _claim("standard definition: U-bar is not an EF of X",
               std.holds is False and std.witness.is_full_space, verdict=std.to_json()),
        _claim("iff definition: U-bar is not an EF of X", iff.holds is False, verdict=iff.to_json()),
        _claim("linear-map definition: U-bar is an EF of X", lin.holds is True, verdict=lin.to_json()),
    ]


def _ambiguity() -> list[dict]:
    verts = enumerate_vertices(inst.x_bar()).vertices
    Up = inst.u_prime()
    std = check_ef_standard(Up, inst.x_bar())
    g0, _ = detect_effective_G_zero(Up)
    return [
        _claim("X-bar has the single point (2,1,5)", verts == (inst.X_POINT,),
               vertices=[format_vector(v) for v in verts]),
        _claim("U' (U-bar plus x - Aw = 0) projects onto X", std.holds is True, verdict=std.to_json()),
        _claim("U' does not have effective G = 0", not g0),
    ]


def _printed_b() -> list[dict]:
    X, U = inst.x_bar(), inst.u_bar()
    B = inst.map_b_printed()
    ok_b, rep_b = verify_map_image(X, B, U)
    B_fit = fit_linear_map([(inst.X_POINT, inst.U_BAR_VERTEX)])
    ok_fit, rep_fit = verify_map_image(X, B_fit, U)
    lin = check_ef_linear_map(X, U)
    return [
        _claim("printed B does not map (2,1,5) to (3,2,0,0,0)", not ok_b,
               image=format_vector(B.apply(inst.X_POINT)), report=rep_b),
        _claim("a fitted B' maps X onto U-bar", ok_fit, B_fitted=B_fit.to_json(), report=rep_fit),
        _claim("linear-map definition: X is an EF of U-bar", lin.holds is True, verdict=lin.to_json()),
    ]


def _augmentation(rng: random.Random, sweep: int) -> list[dict]:
    rep = demonstrate_mutual_ef(build_example_1())
    out = [_claim("builtin P1, P2 augment into mutual EFs", rep.valid, report=rep.to_json())]
    results = []
    for _ in range(sweep):
        spec = random_spec(rng)
        results.append(demonstrate_mutual_ef(spec).valid)
    out.append(_claim(f"{sweep} random augmentation specs", all(results), passed_count=sum(results)))
    return out


def _mstp(rng: random.Random) -> list[dict]:
    g = complete_graph(3, [1, 2, 3])
    values = {f.label.value: solve_model(f).value
              for f in (build_edmonds(g), build_martin(g), build_martin_restated(g))}
    values["kruskal"] = kruskal(g)[0]
    red = check_subtour_redundancy(complete_graph(4))
    k4 = complete_graph(4, [Fraction(rng.randint(1, 20), rng.randint(1, 4)) for _ in range(6)])
    par = paradox_demo(k4)
    c = par.counts
    return [
        _claim("K3 with costs (1,2,3): all models give 3",
               set(values.values()) == {Fraction(3)},
               optima={k: format_rational(v) for k, v in values.items()}),
        _claim("K4 subtour rows are redundant for Martin's model", red.holds, report=red.to_json()),
        _claim("K4 paradox counts and optima",
               par.all_equal and c["edmonds"]["rows"] == 11 and c["martin"]["rows"] == 41
               and c["martin_restated"]["vars"] < c["martin"]["vars"] and par.restated_has_no_x,
               report=par.to_json()),
    ]


def _auxiliary(rng: random.Random) -> list[dict]:
    U, A = inst.u_bar(), inst.map_a()
    sol = solve_via_auxiliary(U, LinkingMap.linear(A), (1, 0, 0))
    alphas = [random_alpha(rng, 3) for _ in range(10)]
    plain = check_equivalence(U, LinkingMap.linear(A), alphas)
    shifted = check_equivalence(U, LinkingMap(A, (1, 1, 1)), alphas)
    return [
        _claim("two-step solve retrieves x = (2,1,5) with value 2",
               sol.x_star == inst.X_POINT and sol.value == 2, solution=sol.to_json()),
        _claim("LP1 = LP2 + alpha^T b for random alpha (b = 0)", plain.holds, report=plain.to_json()),
        _claim("LP1 = LP2 + alpha^T b for random alpha (b = (1,1,1))", shifted.holds,
               report=shifted.to_json()),
    ]


def paper_suite(seed: int = 0, sweep: int = 5) -> dict:
    rng = random.Random(seed)
    sections = {
        "counterexample": _counterexample(),
        "ambiguity": _ambiguity(),
        "printed_b": _printed_b(),
        "augmentation": _augmentation(rng, sweep),
        "mstp": _mstp(rng),
        "auxiliary": _auxiliary(rng),
    }
    passed = all(c["passed"] for claims in sections.values() for c in claims)
    return {"seed": seed, "passed": passed, "sections": sections}
