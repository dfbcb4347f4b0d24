"""Simultaneous colored s-t path problems: solvers, oracles, generators."""

from .approx import k_union_approx
from .dagdp import solve_exact_dag, solve_superset_dag
from .errors import (
    BudgetExceededError,
    InstanceFormatError,
    NegativeCycleError,
    NotDagError,
    NotLaminarError,
    SimpathError,
)
from .fpt import (
    DisjointPathsQuery,
    solve_exact_existence_fpt,
    solve_superset_fpt,
    vertex_disjoint_paths,
)
from .laminar import LaminarAnalysis, analyze_color_family, solve_laminar
from .model import (
    EXACT,
    SUPERSET,
    ArcRecord,
    ArcSet,
    ColoredNetwork,
    SolutionReport,
    ValidationReport,
    contains_st_path,
    is_exact_path_set,
    multi_colored_arcs,
    multi_terminal_reduce,
    network_from_plain,
    parse_instance,
    serialize_instance,
    solution_cost,
    solution_from_json,
    solution_to_json,
    validate_instance,
    validate_solution,
)
from .oracle import (
    CnfFormula,
    CoverSystem,
    brute_force_solve,
    enumerate_assignments,
    format_dimacs,
    min_set_cover_bruteforce,
    parse_cover_system,
    parse_dimacs,
)
from .paths import (
    DistanceTable,
    conservative_shortest,
    nonneg_shortest,
    shortest_st_in_color,
    topological_order,
)

__version__ = "0.1.0"

__all__ = [
    "ArcRecord",
    "ArcSet",
    "BudgetExceededError",
    "CnfFormula",
    "ColoredNetwork",
    "CoverSystem",
    "DisjointPathsQuery",
    "DistanceTable",
    "EXACT",
    "InstanceFormatError",
    "LaminarAnalysis",
    "NegativeCycleError",
    "NotDagError",
    "NotLaminarError",
    "SUPERSET",
    "SimpathError",
    "SolutionReport",
    "ValidationReport",
    "analyze_color_family",
    "brute_force_solve",
    "conservative_shortest",
    "contains_st_path",
    "enumerate_assignments",
    "format_dimacs",
    "is_exact_path_set",
    "k_union_approx",
    "min_set_cover_bruteforce",
    "multi_colored_arcs",
    "multi_terminal_reduce",
    "network_from_plain",
    "nonneg_shortest",
    "parse_cover_system",
    "parse_dimacs",
    "parse_instance",
    "serialize_instance",
    "shortest_st_in_color",
    "solution_cost",
    "solution_from_json",
    "solution_to_json",
    "solve_exact_dag",
    "solve_exact_existence_fpt",
    "solve_laminar",
    "solve_superset_dag",
    "solve_superset_fpt",
    "topological_order",
    "validate_instance",
    "validate_solution",
    "vertex_disjoint_paths",
]
