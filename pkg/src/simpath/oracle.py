"""Exhaustive ground truth: subset enumeration plus miniature source-problem oracles.

Deliberately dumb. The solution oracle enumerates all 2^|A| arc subsets
instead of anything path-aware so that it shares no logic with the
solvers it checks. Caps are hard errors, never silent sampling.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import BudgetExceededError, InstanceFormatError
from .model import (
    EXACT,
    ColoredNetwork,
    SolutionReport,
    contains_st_path,
    is_exact_path_set,
    validate_solution,
)

DEFAULT_MAX_ORACLE_ARCS = 24


def brute_force_solve(
    net: ColoredNetwork, variant: str, max_arcs: int = DEFAULT_MAX_ORACLE_ARCS
) -> SolutionReport:
    """Minimum-cost feasible arc subset by full enumeration.

    Ties are broken globally: among minimum-cost feasible subsets the one
    whose sorted arc-id sequence is lexicographically smallest wins, so
    solver-versus-oracle comparisons can assert full report equality.
    """
    m = len(net.arcs)
    if m > max_arcs:
        raise BudgetExceededError(f"{m} arcs exceed the oracle cap of {max_arcs}")

    color_masks = []
    for color in range(1, net.k + 1):
        mask = 0
        for a in net.arcs:
            if color in a.colors:
                mask |= 1 << a.id
        color_masks.append(mask)

    feasible_cache: dict[int, bool] = {}

    def class_ok(sub_mask: int) -> bool:
        cached = feasible_cache.get(sub_mask)
        if cached is not None:
            return cached
        ids = frozenset(_bits(sub_mask))
        if variant == EXACT:
            ok, _ = is_exact_path_set(net, ids)
        else:
            ok = contains_st_path(net, ids)
        feasible_cache[sub_mask] = ok
        return ok

    costs = [a.cost for a in net.arcs]
    best: tuple[int, tuple[int, ...]] | None = None
    for mask in range(1 << m):
        if not all(class_ok(mask & cm) for cm in color_masks):
            continue
        ids = tuple(_bits(mask))
        cost = sum(costs[i] for i in ids)
        if best is None or (cost, ids) < best:
            best = (cost, ids)

    if best is None:
        return SolutionReport(False, None, frozenset(), (), solver="oracle")
    return validate_solution(net, variant, frozenset(best[1]), solver="oracle")


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# ---------------------------------------------------------------------------
# CNF formulas
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CnfFormula:
    """CNF formula as signed integer literals, one tuple per clause."""

    num_variables: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for pos, clause in enumerate(self.clauses):
            if not clause:
                raise InstanceFormatError(f"clause {pos} is empty")
            for lit in clause:
                if lit == 0 or not 1 <= abs(lit) <= self.num_variables:
                    raise InstanceFormatError(f"clause {pos}: bad literal {lit}")


def parse_dimacs(text: str) -> CnfFormula:
    """Parse DIMACS cnf. The header's clause count is trusted but re-checked."""
    num_variables = None
    declared_clauses = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise InstanceFormatError(f"bad DIMACS header: {line!r}")
            num_variables, declared_clauses = int(parts[2]), int(parts[3])
            continue
        for token in line.split():
            lit = int(token)
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            else:
                current.append(lit)
    if current:
        clauses.append(tuple(current))
    if num_variables is None:
        raise InstanceFormatError("missing DIMACS 'p cnf' header")
    if declared_clauses is not None and declared_clauses != len(clauses):
        raise InstanceFormatError(
            f"header declares {declared_clauses} clauses, found {len(clauses)}"
        )
    return CnfFormula(num_variables, tuple(clauses))


def format_dimacs(formula: CnfFormula) -> str:
    lines = [f"p cnf {formula.num_variables} {len(formula.clauses)}"]
    lines += [" ".join(str(lit) for lit in clause) + " 0" for clause in formula.clauses]
    return "\n".join(lines) + "\n"


def enumerate_assignments(formula: CnfFormula, max_variables: int = 20) -> tuple[int, bool]:
    """Exhaust all assignments of a formula.

    Returns ``(m_s*, exactly_one)`` where m_s* is the maximum number of
    simultaneously satisfied clauses and the flag says whether some
    assignment makes exactly one literal true in every clause. The flag
    is what the exact-variant SAT gadgets actually certify.
    """
    n = formula.num_variables
    if n > max_variables:
        raise BudgetExceededError(f"{n} variables exceed the cap of {max_variables}")
    best = 0
    exactly_one = len(formula.clauses) == 0
    for bits in range(1 << n):
        satisfied = 0
        all_exactly_one = True
        for clause in formula.clauses:
            true_count = 0
            for lit in clause:
                value = bool(bits >> (abs(lit) - 1) & 1)
                if (lit > 0) == value:
                    true_count += 1
            if true_count:
                satisfied += 1
            if true_count != 1:
                all_exactly_one = False
        best = max(best, satisfied)
        exactly_one = exactly_one or all_exactly_one
    return best, exactly_one


# ---------------------------------------------------------------------------
# Set-cover systems
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoverSystem:
    """A ground set plus a family of subsets, in stated order."""

    universe: tuple[str, ...]
    sets: tuple[frozenset[str], ...]

    def __post_init__(self):
        ground = set(self.universe)
        if len(ground) != len(self.universe):
            raise InstanceFormatError("duplicate universe elements")
        for pos, members in enumerate(self.sets):
            stray = members - ground
            if stray:
                raise InstanceFormatError(f"set {pos}: not drawn from universe: {sorted(stray)}")


def parse_cover_system(text: str) -> CoverSystem:
    """Parse {"universe": [...], "sets": [[...], ...]} JSON."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"not valid JSON: {exc}") from exc
    try:
        universe = tuple(str(u) for u in doc["universe"])
        sets = tuple(frozenset(str(x) for x in members) for members in doc["sets"])
    except (KeyError, TypeError) as exc:
        raise InstanceFormatError(f"malformed cover system: {exc}") from exc
    return CoverSystem(universe, sets)


def min_set_cover_bruteforce(system: CoverSystem, max_sets: int = 20) -> int:
    """Minimum number of family members covering the universe.

    Raises InstanceFormatError("uncoverable") when some element lies in no set.
    """
    if len(system.sets) > max_sets:
        raise BudgetExceededError(f"{len(system.sets)} sets exceed the cap of {max_sets}")
    covered = set().union(*system.sets) if system.sets else set()
    missing = set(system.universe) - covered
    if missing:
        raise InstanceFormatError(f"uncoverable: {sorted(missing)} in no set")
    ground = set(system.universe)
    best = len(system.sets)
    for mask in range(1 << len(system.sets)):
        size = mask.bit_count()
        if size >= best:
            continue
        chosen: set[str] = set()
        for i in range(len(system.sets)):
            if mask >> i & 1:
                chosen |= system.sets[i]
        if chosen >= ground:
            best = size
    return best
