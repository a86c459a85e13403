"""Command-line front end: ``efcheck <command> ...``.

Exit codes: 0 when the checked claim holds, 1 when it is refuted or
undecided, 2 for usage and input errors. Reports are JSON.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Sequence

from . import lp
from .augmentation import AugmentationSpec, build_example_1, demonstrate_mutual_ef
from .auxiliary import AuxiliaryError, check_equivalence, load_link, solve_direct, solve_via_auxiliary
from .ef import BlockedPolyhedron, check_ef
from .mstp import (GraphError, Model, build_edmonds, build_martin, build_martin_restated,
                   check_subtour_redundancy, kruskal, load_graph, paradox_demo)
from .numeric import Matrix, as_rational, format_rational, format_vector
from .polyhedron import HPolyhedron, PolyhedronError, polyhedron_from_json, polyhedron_to_json
from .projection import project_onto_block
from .suite import paper_suite
from .vertices import VertexLimitError, default_limit, enumerate_vertices

__all__ = ["main", "InputError"]


class InputError(Exception):
    pass


def _read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _read_poly(path: str) -> HPolyhedron:
    try:
        return polyhedron_from_json(_read_json(path))
    except PolyhedronError as exc:
        raise InputError(f"{path}: {exc}") from None


def _emit(report: dict, out: str | None) -> None:
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_solve(args) -> int:
    data = _read_json(args.lp)
    try:
        P = polyhedron_from_json(data["polyhedron"])
        problem = lp.LPProblem(tuple(data["objective"]), data.get("sense", "min"), P)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{args.lp}: malformed LP file: {exc}") from None
    out = lp.solve(problem)
    report = {"status": out.status.value,
              "value": format_rational(out.value) if out.value is not None else None,
              "point": dict(zip(P.names, format_vector(out.point))) if out.point else None,
              "ray": dict(zip(P.names, format_vector(out.ray))) if out.ray else None}
    _emit(report, args.out)
    return 0


def _cmd_project(args) -> int:
    P = _read_poly(args.poly)
    res = project_onto_block(P, args.keep_block)
    _emit(res.to_json(), args.out)
    return 0


def _cmd_vertices(args) -> int:
    P = _read_poly(args.poly)
    limit = args.limit if args.limit is not None else default_limit()
    try:
        V = enumerate_vertices(P, limit)
    except VertexLimitError as exc:
        raise InputError(str(exc)) from None
    _emit(V.to_json(), args.out)
    return 0


def _cmd_ef(args) -> int:
    U = BlockedPolyhedron.from_labels(_read_poly(args.ef_poly))
    X = _read_poly(args.target)
    target = U.poly if args.definition == "map" else U
    verdict = check_ef(args.definition, target, X, args.search_limit)
    _emit(verdict.to_json(), args.out)
    return 0 if verdict.holds else 1


def _diag_or_matrix(data) -> Matrix:
    if data and not isinstance(data[0], list):
        return Matrix.diagonal(data)
    return Matrix.from_rows(data)


def _cmd_augment(args) -> int:
    if args.paper_example_1:
        spec = build_example_1()
    else:
        if not (args.p1 and args.p2):
            raise InputError("--p1 and --p2 are required unless --paper-example-1 is given")
        P1, P2 = _read_poly(args.p1), _read_poly(args.p2)
        if args.random:
            rng = random.Random(args.seed)
            q = rng.randint(1, 3)
            B1 = Matrix.from_rows([[rng.randint(-10, 10) for _ in range(P1.dim)] for _ in range(q)])
            B2 = Matrix.from_rows([[rng.randint(-10, 10) for _ in range(P2.dim)] for _ in range(q)])
            C1 = Matrix.diagonal([rng.randint(1, 10) for _ in P1.constraints])
            C2 = Matrix.diagonal([rng.randint(1, 10) for _ in P2.constraints])
        elif args.spec:
            data = _read_json(args.spec)
            try:
                B1, B2 = Matrix.from_rows(data["B1"]), Matrix.from_rows(data["B2"])
                C1, C2 = _diag_or_matrix(data["C1"]), _diag_or_matrix(data["C2"])
            except (KeyError, TypeError, ValueError) as exc:
                raise InputError(f"{args.spec}: malformed spec: {exc}") from None
        else:
            raise InputError("give --spec FILE or --random")
        try:
            spec = AugmentationSpec(P1, P2, B1, B2, C1, C2)
        except PolyhedronError as exc:
            raise InputError(str(exc)) from None
    report = demonstrate_mutual_ef(spec)
    _emit({"spec": spec.to_json(), "report": report.to_json()}, args.out)
    return 0 if report.valid else 1


def _cmd_mstp(args) -> int:
    try:
        g = load_graph(args.graph)
    except GraphError as exc:
        raise InputError(f"{args.graph}: {exc}") from None
    except OSError as exc:
        raise InputError(f"{args.graph}: {exc.strerror}") from None
    builders = {Model.EDMONDS_P.value: build_edmonds, Model.MARTIN_Q.value: build_martin,
                Model.MARTIN_Q_PRIME.value: build_martin_restated}
    chosen = list(builders) if args.model == "all" else [args.model]
    weight, tree = kruskal(g)
    report = {"kruskal": {"weight": format_rational(weight), "tree": [list(e) for e in tree]},
              "models": {}}
    ok = True
    for name in chosen:
        f = builders[name](g)
        out = lp.solve(f.lp)
        value = out.value if out.optimal else None
        ok &= value == weight
        report["models"][name] = {"rows": f.n_rows, "vars": f.n_vars, "status": out.status.value,
                                  "value": format_rational(value) if value is not None else None}
    if args.check_redundancy:
        red = check_subtour_redundancy(g)
        report["redundancy"] = red.to_json()
        ok &= red.holds
    if args.paradox:
        par = paradox_demo(g)
        report["paradox"] = par.to_json()
        ok &= par.all_equal
    report["all_equal_kruskal"] = ok
    _emit(report, args.out)
    return 0 if ok else 1


def _parse_alpha(text: str) -> tuple:
    try:
        return tuple(as_rational(t) for t in text.split(","))
    except (ValueError, TypeError) as exc:
        raise InputError(f"bad --alpha {text!r}: {exc}") from None


def _cmd_auxiliary(args) -> int:
    U = _read_poly(args.u)
    try:
        link = load_link(args.map)
    except json.JSONDecodeError as exc:
        raise InputError(f"{args.map}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    except OSError as exc:
        raise InputError(f"{args.map}: {exc.strerror}") from None
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{args.map}: malformed map: {exc}") from None
    alphas = [_parse_alpha(a) for a in args.alpha]
    try:
        report = {"solutions": [{"alpha": format_vector(a),
                                 "two_step": solve_via_auxiliary(U, link, a).to_json(),
                                 "direct": solve_direct(U, link, a).to_json()} for a in alphas]}
        eq = check_equivalence(U, link, alphas)
    except (AuxiliaryError, PolyhedronError) as exc:
        report = {"error": str(exc)}
        _emit(report, args.out)
        return 1
    report["equivalence"] = eq.to_json()
    _emit(report, args.out)
    return 0 if eq.holds else 1


def _cmd_paper_suite(args) -> int:
    report = paper_suite(args.seed, args.sweep)
    _emit(report, args.out)
    return 0 if report["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="efcheck", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("--out", "-o", help="write the JSON report here instead of stdout")
        p.set_defaults(func=func)
        return p

    p = add("solve", _cmd_solve, "solve an LP exactly")
    p.add_argument("--lp", required=True)

    p = add("project", _cmd_project, "project a polyhedron onto one variable block")
    p.add_argument("--poly", required=True)
    p.add_argument("--keep-block", required=True, choices=["X", "W", "U_AUX"])

    p = add("vertices", _cmd_vertices, "enumerate vertices and rays")
    p.add_argument("--poly", required=True)
    p.add_argument("--limit", type=_positive_int)

    p = add("ef", _cmd_ef, "check an extended-formulation relation")
    p.add_argument("--definition", required=True, choices=["standard", "map", "iff"])
    p.add_argument("--ef-poly", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--search-limit", type=_positive_int, default=100_000)

    p = add("augment", _cmd_augment, "build and check the mutual augmentation W")
    p.add_argument("--p1")
    p.add_argument("--p2")
    p.add_argument("--spec")
    p.add_argument("--random", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--paper-example-1", action="store_true")

    p = add("mstp", _cmd_mstp, "spanning-tree models on a weighted graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--model", default="all", choices=["edmonds", "martin", "martin-restated", "all"])
    p.add_argument("--check-redundancy", action="store_true")
    p.add_argument("--paradox", action="store_true")

    p = add("auxiliary", _cmd_auxiliary, "two-step solve through a linking map")
    p.add_argument("--u", required=True)
    p.add_argument("--map", required=True)
    p.add_argument("--alpha", required=True, action="append")

    p = add("paper-suite", _cmd_paper_suite, "run every worked reproduction")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sweep", type=_positive_int, default=5,
                   help="number of random augmentation specs")
    return parser


def _positive_int(text: str) -> int:
    n = int(text)
    if n <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, PolyhedronError, GraphError) as exc:
        print(f"efcheck: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
