"""Command-line surface: solve, check, generate, oracle, existence.

Exit codes: 0 solved/feasible (or generation succeeded), 1 infeasible
instance, 2 invalid input, 3 budget exceeded. Output is deterministic
for identical inputs.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import dagdp, fpt, oracle, reductions
from .approx import k_union_approx
from .errors import BudgetExceededError, NotDagError, NotLaminarError, SimpathError
from .laminar import analyze_color_family, solve_laminar
from .model import (
    EXACT,
    SUPERSET,
    ColoredNetwork,
    SolutionReport,
    multi_colored_arcs,
    parse_instance,
    serialize_instance,
    solution_from_json,
    solution_to_json,
    validate_instance,
    validate_solution,
)
from .paths import topological_order

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_INVALID = 2
EXIT_BUDGET = 3

DEFAULT_MAX_K_DAG = 6


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as handle:
        return handle.read()


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def _load_instance(path: str) -> ColoredNetwork:
    net = parse_instance(_read(path))
    report = validate_instance(net)
    if not report.ok:
        raise SimpathError("; ".join(report.errors))
    return net


def _auto_solve(net: ColoredNetwork, variant: str, args) -> SolutionReport:
    if analyze_color_family(net).laminar:
        return solve_laminar(net, variant)
    if net.directed and topological_order(net) is not None and net.k <= args.max_k:
        if variant == EXACT:
            return dagdp.solve_exact_dag(net, max_states=args.max_states)
        return dagdp.solve_superset_dag(net, max_states=args.max_states)
    if variant == SUPERSET and len(multi_colored_arcs(net)) <= args.max_ell:
        return fpt.solve_superset_fpt(net, max_ell=args.max_ell, workers=args.workers)
    if len(net.arcs) <= args.max_oracle_arcs:
        return oracle.brute_force_solve(net, variant, max_arcs=args.max_oracle_arcs)
    raise BudgetExceededError("no applicable solver within the configured caps")


def _dispatch_solve(net: ColoredNetwork, variant: str, algorithm: str, args) -> SolutionReport:
    if algorithm == "auto":
        return _auto_solve(net, variant, args)
    if algorithm == "dag-dp":
        if variant == EXACT:
            return dagdp.solve_exact_dag(net, max_states=args.max_states)
        return dagdp.solve_superset_dag(net, max_states=args.max_states)
    if algorithm == "fpt":
        if variant != SUPERSET:
            raise SimpathError("--algorithm fpt optimizes the superset variant only; "
                               "use the 'existence' subcommand for the exact variant")
        return fpt.solve_superset_fpt(net, max_ell=args.max_ell, workers=args.workers)
    if algorithm == "laminar":
        return solve_laminar(net, variant)
    if algorithm == "approx":
        if variant != SUPERSET:
            raise SimpathError("--algorithm approx applies to the superset variant only")
        return k_union_approx(net)
    if algorithm == "oracle":
        return oracle.brute_force_solve(net, variant, max_arcs=args.max_oracle_arcs)
    raise SimpathError(f"unknown algorithm {algorithm!r}")


def _cmd_solve(args) -> int:
    net = _load_instance(args.input)
    report = _dispatch_solve(net, args.variant, args.algorithm, args)
    _write(args.output, solution_to_json(report))
    return EXIT_OK if report.feasible else EXIT_INFEASIBLE


def _cmd_check(args) -> int:
    net = _load_instance(args.input)
    given = solution_from_json(_read(args.solution))
    report = validate_solution(net, args.variant, given.arcs, solver="check")
    _write(args.output, solution_to_json(report))
    return EXIT_OK if report.feasible else EXIT_INFEASIBLE


def _cmd_existence(args) -> int:
    net = _load_instance(args.input)
    report = fpt.solve_exact_existence_fpt(
        net, max_ell=args.max_ell, max_nodes=args.max_nodes
    )
    _write(args.output, solution_to_json(report))
    return EXIT_OK if report.feasible else EXIT_INFEASIBLE


def _cmd_generate(args) -> int:
    names: dict[int, str] | None = None
    if args.reduction in ("two-disjoint", "inapprox"):
        rng = random.Random(args.seed)
        num_vertices = rng.randint(6, 9)
        terminals = rng.sample(range(num_vertices), 4)
        s1, t1, s2, t2 = terminals
        arcs = reductions.random_digraph(
            rng, num_vertices, rng.randint(6, 14), avoid={(s1, t1), (s2, t2)}
        )
        net = reductions.gen_two_disjoint(num_vertices, arcs, s1, t1, s2, t2)
        if args.reduction == "inapprox":
            net = reductions.gen_inapprox_gadget(net)
    elif args.reduction == "cnf-superset":
        formula = oracle.parse_dimacs(_read(args.cnf))
        net, names = reductions.gen_cnf_superset(formula)
    elif args.reduction == "cnf-exact-dag":
        formula = oracle.parse_dimacs(_read(args.cnf))
        net, names = reductions.gen_cnf_exact_dag(formula)
    elif args.reduction == "setcover":
        system = oracle.parse_cover_system(_read(args.cover))
        net = reductions.gen_setcover_dag(system)
    elif args.reduction == "tight-approx":
        net = reductions.gen_tight_approx(args.k)
    else:
        raise SimpathError(f"unknown reduction {args.reduction!r}")
    if args.undirect:
        net = reductions.forget_orientation(net)
    _write(args.output, serialize_instance(net))
    if args.metadata is not None:
        if names is None:
            raise SimpathError(f"reduction {args.reduction!r} emits no metadata")
        doc = {"vertex_names": {str(i): name for i, name in sorted(names.items())}}
        _write(args.metadata, json.dumps(doc, indent=2, sort_keys=True))
    return EXIT_OK


def _add_caps(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--max-states", type=int, default=dagdp.DEFAULT_MAX_STATES,
                        help="product-state budget for dag-dp")
    parser.add_argument("--max-ell", type=int, default=fpt.DEFAULT_MAX_ELL_SUPERSET,
                        help="multi-colored arc budget for fpt")
    parser.add_argument("--max-oracle-arcs", type=int,
                        default=oracle.DEFAULT_MAX_ORACLE_ARCS,
                        help="arc budget for the brute-force oracle")
    parser.add_argument("--max-k", type=int, default=DEFAULT_MAX_K_DAG,
                        help="largest k for which auto selects dag-dp")
    parser.add_argument("--workers", type=int, default=1,
                        help="worker threads for the fpt subset enumeration")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="simpath",
        description="Solvers and generators for simultaneous colored s-t path problems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="solve an instance")
    solve.add_argument("--variant", choices=(EXACT, SUPERSET), required=True)
    solve.add_argument("--algorithm", default="auto",
                       choices=("auto", "dag-dp", "fpt", "laminar", "approx", "oracle"))
    solve.add_argument("--input", required=True)
    solve.add_argument("--output", default=None)
    _add_caps(solve)
    solve.set_defaults(handler=_cmd_solve)

    check = sub.add_parser("check", help="validate a solution document")
    check.add_argument("--variant", choices=(EXACT, SUPERSET), required=True)
    check.add_argument("--input", required=True)
    check.add_argument("--solution", required=True)
    check.add_argument("--output", default=None)
    check.set_defaults(handler=_cmd_check)

    generate = sub.add_parser("generate", help="emit a reduction instance")
    generate.add_argument("--reduction", required=True,
                          choices=("two-disjoint", "inapprox", "cnf-superset",
                                   "cnf-exact-dag", "setcover", "tight-approx"))
    generate.add_argument("--cnf", default=None, help="DIMACS cnf input")
    generate.add_argument("--cover", default=None, help="cover-system JSON input")
    generate.add_argument("--k", type=int, default=2)
    generate.add_argument("--seed", type=int, default=0)
    generate.add_argument("--undirect", action="store_true",
                          help="forget the orientation of the generated instance")
    generate.add_argument("--output", default=None)
    generate.add_argument("--metadata", default=None,
                          help="write the vertex-name map to this path")
    generate.set_defaults(handler=_cmd_generate)

    oracle_cmd = sub.add_parser("oracle", help="solve by exhaustive enumeration")
    oracle_cmd.add_argument("--variant", choices=(EXACT, SUPERSET), required=True)
    oracle_cmd.add_argument("--input", required=True)
    oracle_cmd.add_argument("--output", default=None)
    oracle_cmd.add_argument("--max-oracle-arcs", type=int,
                            default=oracle.DEFAULT_MAX_ORACLE_ARCS)
    oracle_cmd.set_defaults(handler=_cmd_solve_oracle)

    existence = sub.add_parser("existence", help="decide exact feasibility (fpt)")
    existence.add_argument("--algorithm", choices=("fpt",), default="fpt")
    existence.add_argument("--input", required=True)
    existence.add_argument("--output", default=None)
    existence.add_argument("--max-ell", type=int, default=fpt.DEFAULT_MAX_ELL_EXACT)
    existence.add_argument("--max-nodes", type=int, default=fpt.DEFAULT_MAX_SEARCH_NODES)
    existence.set_defaults(handler=_cmd_existence)

    return parser


def _cmd_solve_oracle(args) -> int:
    net = _load_instance(args.input)
    report = oracle.brute_force_solve(net, args.variant, max_arcs=args.max_oracle_arcs)
    _write(args.output, solution_to_json(report))
    return EXIT_OK if report.feasible else EXIT_INFEASIBLE


def run_cli(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code not in (0, None) else EXIT_OK
    try:
        return args.handler(args)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (NotDagError, NotLaminarError, SimpathError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))
