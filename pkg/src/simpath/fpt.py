"""Solvers parameterized by the number of multi-colored arcs.

Two algorithms share the parameter ell = number of arcs in at least two
color classes:

* :func:`solve_superset_fpt` enumerates every subset of the multi-colored
  arcs, zeroes its cost, routes each color along a shortest path in its
  own class and keeps the best union (k * 2^ell shortest-path runs).
* :func:`solve_exact_existence_fpt` decides the exact variant by choosing
  the multi-colored sub-paths of each color, then stitching them together
  with vertex-disjoint connector paths found by exhaustive backtracking.
  The backtracking subroutine replaces the black-box FPT disjoint-paths
  algorithm, so the directed mode carries no FPT guarantee; it is exact
  at desk scale.
"""

from __future__ import annotations

import heapq
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable

from .errors import BudgetExceededError
from .model import (
    EXACT,
    SUPERSET,
    ArcSet,
    ColoredNetwork,
    SolutionReport,
    contains_st_path,
    multi_colored_arcs,
    validate_solution,
)

DEFAULT_MAX_ELL_SUPERSET = 20
DEFAULT_MAX_ELL_EXACT = 8
DEFAULT_MAX_SEARCH_NODES = 500_000


# ---------------------------------------------------------------------------
# Superset optimization (k * 2^ell shortest paths)
# ---------------------------------------------------------------------------


def _class_adjacency(net: ColoredNetwork, effective: dict[int, int]):
    """Per-color adjacency with effective costs baked in, arc-id order.

    Mirrors the relaxation order of :func:`simpath.paths.nonneg_shortest`
    exactly, so routing through these tables returns the same paths as
    ``shortest_st_in_color`` would (a pinned equivalence in the tests).
    """
    tables = {}
    for color in range(1, net.k + 1):
        adjacency: list[list[tuple[int, int, int]]] = [[] for _ in range(net.num_vertices)]
        for i in sorted(net.color_class(color)):
            a = net.arcs[i]
            adjacency[a.tail].append((a.head, effective[i], i))
            if not net.directed:
                adjacency[a.head].append((a.tail, effective[i], i))
        tables[color] = adjacency
    return tables


def _route_class(adjacency, net: ColoredNetwork, zeroed: frozenset[int]) -> list[int] | None:
    """Shortest s-t path over one class table, with some arcs zeroed."""
    dist: list[int | None] = [None] * net.num_vertices
    parent: list[tuple[int, int] | None] = [None] * net.num_vertices
    dist[net.s] = 0
    heap = [(0, net.s)]
    done = set()
    while heap:
        d, v = heapq.heappop(heap)
        if v in done:
            continue
        done.add(v)
        for head, cost, arc_id in adjacency[v]:
            nd = d if arc_id in zeroed else d + cost
            if dist[head] is None or nd < dist[head]:
                dist[head] = nd
                parent[head] = (v, arc_id)
                heapq.heappush(heap, (nd, head))
    if dist[net.t] is None:
        return None
    path = []
    v = net.t
    while v != net.s:
        v, arc_id = parent[v]  # type: ignore[misc]
        path.append(arc_id)
    path.reverse()
    return path


def solve_superset_fpt(
    net: ColoredNetwork,
    max_ell: int = DEFAULT_MAX_ELL_SUPERSET,
    workers: int = 1,
) -> SolutionReport:
    """Optimal superset solution via multi-colored subset enumeration.

    Negative costs are normalized to zero up front and the negative arcs
    join the final solution unconditionally. Candidates are evaluated at
    the normalized costs (not the subset-zeroed search costs): zeroing is
    only a device to steer each color onto arcs the candidate subset
    wants shared, while the union must pay the real price of whatever it
    uses. Unused subset arcs are dropped. The subset enumeration is
    embarrassingly parallel; results are merged by (cost, sorted arc ids)
    so any worker count returns the identical report.
    """
    classes = net.color_classes()
    for ids in classes.values():
        if not contains_st_path(net, ids):
            return SolutionReport(False, None, frozenset(), (), solver="fpt")

    negatives = frozenset(a.id for a in net.arcs if a.cost < 0)
    effective = {a.id: max(a.cost, 0) for a in net.arcs}
    multi = sorted(multi_colored_arcs(net))
    if len(multi) > max_ell:
        raise BudgetExceededError(
            f"{len(multi)} multi-colored arcs exceed the cap of {max_ell}"
        )
    tables = _class_adjacency(net, effective)

    def evaluate(mask: int) -> tuple[int, tuple[int, ...]]:
        zeroed = frozenset(multi[b] for b in range(len(multi)) if mask >> b & 1)
        union: set[int] = set()
        for color in range(1, net.k + 1):
            path = _route_class(tables[color], net, zeroed)
            assert path is not None  # feasibility pre-checked per class
            union.update(path)
        ids = tuple(sorted(union))
        return sum(effective[i] for i in ids), ids

    def best_in(masks: Iterable[int]) -> tuple[int, tuple[int, ...]] | None:
        best = None
        for mask in masks:
            candidate = evaluate(mask)
            if best is None or candidate < best:
                best = candidate
        return best

    total = 1 << len(multi)
    if workers <= 1 or total < 4:
        best = best_in(range(total))
    else:
        chunk = -(-total // workers)
        ranges = [range(lo, min(lo + chunk, total)) for lo in range(0, total, chunk)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(best_in, ranges))
        best = min((r for r in results if r is not None), default=None)
    assert best is not None
    final = frozenset(best[1]) | negatives
    report = validate_solution(net, SUPERSET, final, solver="fpt")
    assert report.feasible
    return report


# ---------------------------------------------------------------------------
# Vertex-disjoint paths by exhaustive backtracking
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DisjointPathsQuery:
    """Find one path per terminal pair, pairwise vertex-disjoint.

    Paths may share no vertex at all across pairs, endpoints included,
    and must avoid the forbidden vertices. ``arc_filter`` restricts the
    host network's arcs; direction is respected iff the network is
    directed.
    """

    net: ColoredNetwork
    arc_filter: ArcSet
    pairs: tuple[tuple[int, int], ...]
    forbidden: frozenset[int] = frozenset()


def vertex_disjoint_paths(
    query: DisjointPathsQuery, max_nodes: int = DEFAULT_MAX_SEARCH_NODES
) -> list[list[int]] | None:
    """Exhaustive search for a vertex-disjoint path family; None iff none exists.

    Raises BudgetExceededError (distinct from the None verdict) when the
    backtracking search expands more than ``max_nodes`` nodes.
    """
    net = query.net
    for u, v in query.pairs:
        if u == v:
            raise ValueError(f"pair with source == target: {u}")
        if u in query.forbidden or v in query.forbidden:
            raise ValueError(f"pair endpoint {u if u in query.forbidden else v} is forbidden")
    endpoint_list = [v for pair in query.pairs for v in pair]
    if len(set(endpoint_list)) != len(endpoint_list):
        return None  # a shared endpoint rules out vertex-disjointness outright

    adjacency: dict[int, list[tuple[int, int]]] = {}
    for i in sorted(query.arc_filter):
        a = net.arcs[i]
        adjacency.setdefault(a.tail, []).append((i, a.head))
        if not net.directed:
            adjacency.setdefault(a.head, []).append((i, a.tail))

    pair_endpoints = [set(pair) for pair in query.pairs]
    visited_budget = [0]

    def simple_paths(cur, target, blocked, path, on_path):
        visited_budget[0] += 1
        if visited_budget[0] > max_nodes:
            raise BudgetExceededError(f"search-node budget of {max_nodes} exceeded")
        if cur == target:
            yield list(path)
            return
        for arc_id, nxt in adjacency.get(cur, ()):
            if nxt in on_path or nxt in blocked:
                continue
            on_path.add(nxt)
            path.append(arc_id)
            yield from simple_paths(nxt, target, blocked, path, on_path)
            path.pop()
            on_path.remove(nxt)

    def place(idx, used: set[int]) -> list[list[int]] | None:
        if idx == len(query.pairs):
            return []
        source, target = query.pairs[idx]
        blocked = set(query.forbidden) | used
        for later in pair_endpoints[idx + 1:]:
            blocked |= later
        if source in blocked:
            return None
        for path in simple_paths(source, target, blocked, [], {source}):
            vertices = _path_vertices(net, source, path)
            rest = place(idx + 1, used | vertices)
            if rest is not None:
                return [path] + rest
        return None

    return place(0, set())


def _path_vertices(net: ColoredNetwork, source: int, arc_path: list[int]) -> set[int]:
    vertices = {source}
    cur = source
    for arc_id in arc_path:
        a = net.arcs[arc_id]
        cur = a.head if a.tail == cur else a.tail
        vertices.add(cur)
    return vertices


# ---------------------------------------------------------------------------
# Exact-variant feasibility (subset + ordering + orientation enumeration)
# ---------------------------------------------------------------------------


def solve_exact_existence_fpt(
    net: ColoredNetwork,
    max_ell: int = DEFAULT_MAX_ELL_EXACT,
    max_nodes: int = DEFAULT_MAX_SEARCH_NODES,
) -> SolutionReport:
    """Decide exact feasibility; the report carries a verified witness.

    For every subset of the multi-colored arcs whose restriction to each
    color class is a disjoint union of simple paths, each color tries to
    stitch its chosen sub-paths into one s-t path: orderings and (for
    undirected inputs) endpoint orientations are enumerated, and the
    connectors are requested from :func:`vertex_disjoint_paths` in the
    single-colored part of the class. Internal vertices of the chosen
    sub-paths are forbidden so the assembled color restriction is simple.
    """
    multi = sorted(multi_colored_arcs(net))
    if len(multi) > max_ell:
        raise BudgetExceededError(
            f"{len(multi)} multi-colored arcs exceed the cap of {max_ell}"
        )
    classes = net.color_classes()
    single = {i: ids - frozenset(multi) for i, ids in classes.items()}

    for mask in range(1 << len(multi)):
        chosen = [multi[b] for b in range(len(multi)) if mask >> b & 1]
        comps_by_color = {}
        decomposable = True
        for color in range(1, net.k + 1):
            sub = [i for i in chosen if color in net.arcs[i].colors]
            comps = _path_components(net, sub)
            if comps is None:
                decomposable = False
                break
            comps_by_color[color] = comps
        if not decomposable:
            continue
        connector_arcs: set[int] = set()
        stitched_all = True
        for color in range(1, net.k + 1):
            connectors = _connect_color(
                net, comps_by_color[color], single[color], max_nodes
            )
            if connectors is None:
                stitched_all = False
                break
            for path in connectors:
                connector_arcs.update(path)
        if not stitched_all:
            continue
        witness = frozenset(chosen) | frozenset(connector_arcs)
        report = validate_solution(net, EXACT, witness, solver="existence-fpt")
        if not report.feasible:
            raise RuntimeError("assembled witness failed validation")
        return report
    return SolutionReport(False, None, frozenset(), (), solver="existence-fpt")


@dataclass(frozen=True)
class _SubPath:
    """One component of the chosen multi-colored arcs within a color class."""

    arcs: tuple[int, ...]
    start: int
    end: int
    internal: frozenset[int]


def _path_components(net: ColoredNetwork, arc_ids: list[int]) -> list[_SubPath] | None:
    """Decompose an arc set into vertex-disjoint simple paths, else None.

    Directed networks require each component to be a directed path; the
    start/end orientation is then forced. Undirected components report an
    arbitrary endpoint order and callers try both orientations.
    """
    if not arc_ids:
        return []
    neighbors: dict[int, list[tuple[int, int]]] = {}
    for i in arc_ids:
        a = net.arcs[i]
        neighbors.setdefault(a.tail, []).append((i, a.head))
        neighbors.setdefault(a.head, []).append((i, a.tail))
    for entries in neighbors.values():
        if len(entries) > 2:
            return None
    seen_arcs: set[int] = set()
    components = []
    for vertex in sorted(neighbors):
        if len(neighbors[vertex]) != 1 or any(
            i in seen_arcs for i, _ in neighbors[vertex]
        ):
            continue
        # Walk the component from one of its endpoints.
        order = [vertex]
        arcs = []
        cur = vertex
        prev_arc = None
        while True:
            step = [(i, w) for i, w in neighbors[cur] if i != prev_arc]
            if not step:
                break
            arc_id, nxt = step[0]
            if nxt in order:
                return None  # cycle
            arcs.append(arc_id)
            order.append(nxt)
            seen_arcs.add(arc_id)
            cur, prev_arc = nxt, arc_id
        components.append((order, arcs))
    if sum(len(arcs) for _, arcs in components) != len(set(arc_ids)):
        return None  # leftover arcs sit on cycles or repeated ids collapsed
    result = []
    for order, arcs in components:
        if net.directed:
            oriented = _orient_directed(net, order, arcs)
            if oriented is None:
                return None
            order, arcs = oriented
        result.append(
            _SubPath(tuple(arcs), order[0], order[-1], frozenset(order[1:-1]))
        )
    return result


def _orient_directed(net, order, arcs):
    forward = all(
        net.arcs[arc].tail == order[i] and net.arcs[arc].head == order[i + 1]
        for i, arc in enumerate(arcs)
    )
    if forward:
        return order, arcs
    backward = all(
        net.arcs[arc].head == order[i] and net.arcs[arc].tail == order[i + 1]
        for i, arc in enumerate(arcs)
    )
    if backward:
        return list(reversed(order)), list(reversed(arcs))
    return None  # mixed orientation is not a directed path


def _connect_color(
    net: ColoredNetwork,
    comps: list[_SubPath],
    single_arcs: ArcSet,
    max_nodes: int,
) -> list[list[int]] | None:
    """Stitch the color's sub-paths into one s-t path; None when impossible."""
    if not comps:
        query = DisjointPathsQuery(net, single_arcs, ((net.s, net.t),))
        return vertex_disjoint_paths(query, max_nodes)
    forbidden = frozenset().union(*(c.internal for c in comps))
    orientations = 1 if net.directed else 1 << len(comps)
    for ordering in permutations(range(len(comps))):
        for bits in range(orientations):
            terminals = []
            for pos, comp_idx in enumerate(ordering):
                comp = comps[comp_idx]
                if bits >> pos & 1:
                    terminals.append((comp.end, comp.start))
                else:
                    terminals.append((comp.start, comp.end))
            raw_pairs = (
                [(net.s, terminals[0][0])]
                + [(terminals[j][1], terminals[j + 1][0]) for j in range(len(comps) - 1)]
                + [(terminals[-1][1], net.t)]
            )
            pairs = []
            blocked = set(forbidden)
            degenerate_ok = True
            for u, v in raw_pairs:
                if u == v:
                    blocked.add(u)  # empty connector; protect the splice vertex
                else:
                    pairs.append((u, v))
            endpoints = [v for pair in pairs for v in pair]
            if len(set(endpoints)) != len(endpoints) or any(
                v in blocked for v in endpoints
            ):
                degenerate_ok = False
            if not degenerate_ok:
                continue
            if not pairs:
                return []
            query = DisjointPathsQuery(
                net, single_arcs, tuple(pairs), frozenset(blocked)
            )
            found = vertex_disjoint_paths(query, max_nodes)
            if found is not None:
                return found
    return None
