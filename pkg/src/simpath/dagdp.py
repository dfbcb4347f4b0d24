"""Product-graph dynamic programs for DAG instances with constant k.

A product state is the k-tuple of per-color current vertices. A base arc
x->y induces a move when the relevant coordinates sit at x: the exact
variant advances *all* colors of the arc simultaneously, the superset
variant any nonempty subset of them. The full |V|^k table is never
materialized; successors are generated on demand and only reachable
states are stored.

Every move advances at least one coordinate along a DAG arc, so the sum
of topological positions strictly increases. Processing discovered
states in ascending order of that potential makes a single
label-correcting pass exact even with negative arc costs: all
predecessors of a state are settled before the state is popped.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .errors import BudgetExceededError, NotDagError
from .model import (
    EXACT,
    SUPERSET,
    ColoredNetwork,
    SolutionReport,
    network_from_plain,
    solution_cost,
    validate_solution,
)
from .paths import topological_order

DEFAULT_MAX_STATES = 5_000_000


@dataclass(frozen=True)
class ProductSearchResult:
    """Internal search outcome, exposed for replay-style tests."""

    cost: int | None
    moves: tuple[tuple[int, tuple[int, ...]], ...]  # (arc id, moved colors)
    states_discovered: int


def _require_dag(net: ColoredNetwork) -> None:
    if not net.directed:
        raise NotDagError("not a DAG: network is undirected")
    if topological_order(net) is None:
        raise NotDagError("not a DAG: directed cycle present")


def _terminal_normalized(net: ColoredNetwork) -> tuple[ColoredNetwork, int]:
    """Ensure s is a source and t a sink, adding zero-cost pendants if needed.

    Pendant arcs carry the full color set and are appended after the
    original arcs, so ids below ``len(net.arcs)`` are stable and pendants
    are easy to strip from solutions.
    """
    s_has_in = any(a.head == net.s for a in net.arcs)
    t_has_out = any(a.tail == net.t for a in net.arcs)
    if not s_has_in and not t_has_out:
        return net, len(net.arcs)
    full = set(range(1, net.k + 1))
    plain = [(a.tail, a.head, a.cost, set(a.colors)) for a in net.arcs]
    num_vertices = net.num_vertices
    s, t = net.s, net.t
    if s_has_in:
        plain.append((num_vertices, net.s, 0, full))
        s = num_vertices
        num_vertices += 1
    if t_has_out:
        plain.append((net.t, num_vertices, 0, full))
        t = num_vertices
        num_vertices += 1
    return (
        network_from_plain(net.directed, num_vertices, s, t, net.k, plain),
        len(net.arcs),
    )


def _product_search(
    net: ColoredNetwork,
    variant: str,
    cost_override: dict[int, int] | None,
    max_states: int,
) -> ProductSearchResult:
    """Shortest product path from (s,...,s) to (t,...,t) over reachable states."""
    order = topological_order(net)
    assert order is not None
    topo_pos = [0] * net.num_vertices
    for pos, v in enumerate(order):
        topo_pos[v] = pos

    override = cost_override or {}
    out_arcs: dict[int, list[tuple[int, int, tuple[int, ...], int]]] = {}
    for a in net.arcs:
        cost = override.get(a.id, a.cost)
        out_arcs.setdefault(a.tail, []).append((a.id, a.head, tuple(sorted(a.colors)), cost))

    k = net.k
    start = (net.s,) * k
    goal = (net.t,) * k
    dist: dict[tuple[int, ...], int] = {start: 0}
    parent: dict[tuple[int, ...], tuple[tuple[int, ...], int, tuple[int, ...]]] = {}
    heap = [(sum(topo_pos[v] for v in start), start)]
    expanded: set[tuple[int, ...]] = set()

    def relax(state, base_cost, arc_id, head, moved, move_cost):
        successor = tuple(
            head if (i + 1) in moved else v for i, v in enumerate(state)
        )
        new_cost = base_cost + move_cost
        known = dist.get(successor)
        if known is None:
            if len(dist) >= max_states:
                raise BudgetExceededError(
                    f"product state budget of {max_states} exceeded"
                )
            dist[successor] = new_cost
            parent[successor] = (state, arc_id, moved)
            heapq.heappush(heap, (sum(topo_pos[v] for v in successor), successor))
        elif new_cost < known:
            dist[successor] = new_cost
            parent[successor] = (state, arc_id, moved)

    while heap:
        _, state = heapq.heappop(heap)
        if state in expanded:
            continue
        expanded.add(state)
        base_cost = dist[state]
        for x in sorted(set(state)):
            for arc_id, head, colors, cost in out_arcs.get(x, ()):
                at_tail = tuple(i for i in colors if state[i - 1] == x)
                if variant == EXACT:
                    if len(at_tail) == len(colors):
                        relax(state, base_cost, arc_id, head, frozenset(colors), cost)
                else:
                    for sub in range(1, 1 << len(at_tail)):
                        moved = frozenset(
                            at_tail[b] for b in range(len(at_tail)) if sub >> b & 1
                        )
                        relax(state, base_cost, arc_id, head, moved, cost)

    if goal not in dist:
        return ProductSearchResult(None, (), len(dist))
    moves = []
    state = goal
    while state != start:
        prev, arc_id, moved = parent[state]
        moves.append((arc_id, tuple(sorted(moved))))
        state = prev
    moves.reverse()
    return ProductSearchResult(dist[goal], tuple(moves), len(dist))


def solve_exact_dag(
    net: ColoredNetwork, max_states: int = DEFAULT_MAX_STATES
) -> SolutionReport:
    """Minimum-cost exact solution on a DAG, or an infeasible verdict.

    Costs may be negative (any DAG cost function is conservative). On a
    product path of the exact variant every base arc appears at most
    once, so the product-path cost equals the cost of the extracted arc
    set; this is asserted before reporting.
    """
    _require_dag(net)
    work, n_original = _terminal_normalized(net)
    result = _product_search(work, EXACT, None, max_states)
    if result.cost is None:
        return SolutionReport(False, None, frozenset(), (), solver="dag-dp")
    used = frozenset(arc_id for arc_id, _ in result.moves if arc_id < n_original)
    pendant_cost = 0  # pendants cost 0 by construction
    assert solution_cost(net, used) == result.cost - pendant_cost
    report = validate_solution(net, EXACT, used, solver="dag-dp")
    assert report.feasible
    return report


def solve_superset_dag(
    net: ColoredNetwork, max_states: int = DEFAULT_MAX_STATES
) -> SolutionReport:
    """Minimum-cost superset solution on a DAG, or an infeasible verdict.

    Negative costs are normalized to zero for the search and the negative
    arcs are added back to the solution afterwards; re-traversing a
    negative arc in the product graph would otherwise undercut the cost
    of the extracted arc set. The reported cost uses original costs.
    """
    _require_dag(net)
    negatives = frozenset(a.id for a in net.arcs if a.cost < 0)
    work, n_original = _terminal_normalized(net)
    override = {i: 0 for i in negatives}
    result = _product_search(work, SUPERSET, override, max_states)
    if result.cost is None:
        return SolutionReport(False, None, frozenset(), (), solver="dag-dp")
    used = frozenset(arc_id for arc_id, _ in result.moves if arc_id < n_original)
    final = used | negatives
    report = validate_solution(net, SUPERSET, final, solver="dag-dp")
    assert report.feasible
    return report
