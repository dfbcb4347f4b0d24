"""Shortest-path engines shared by all solvers.

Two engines with one contract: a label-correcting (Bellman-Ford style)
engine for directed inputs that may carry negative arcs, and a
priority-queue (Dijkstra style) engine for nonnegative effective costs.
Both relax arcs in ascending id order and update parents only on strict
improvement, which makes every extracted path deterministic.

Tie-breaking convention used throughout the package: among equal-cost
alternatives, prefer the candidate whose sorted arc-id sequence is
lexicographically smallest. Solvers apply it when comparing whole
candidate solutions; path extraction realizes it through the
deterministic relaxation order above.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import NegativeCycleError
from .model import ColoredNetwork

_UNREACHABLE = None


@dataclass(frozen=True)
class DistanceTable:
    """Single-source distances plus parent arcs over a filtered arc set."""

    source: int
    dist: tuple[int | None, ...]
    parent_arc: tuple[int | None, ...]

    def reachable(self, v: int) -> bool:
        return self.dist[v] is not None

    def path_to(self, v: int, net: ColoredNetwork) -> list[int] | None:
        """Arc ids of the recorded source-v path, loop-erased to a simple path."""
        if self.dist[v] is None:
            return None
        vertices = [v]
        arcs: list[int] = []
        cap = len(net.arcs) + net.num_vertices + 1
        while vertices[-1] != self.source:
            if len(arcs) > cap:
                raise RuntimeError("parent chain too long")
            arc_id = self.parent_arc[vertices[-1]]
            assert arc_id is not None
            arc = net.arcs[arc_id]
            arcs.append(arc_id)
            cur = vertices[-1]
            vertices.append(arc.tail if arc.head == cur else arc.head)
        arcs.reverse()
        vertices.reverse()
        # Erase any zero-cost loops so the result is a simple path.
        seen: dict[int, int] = {}
        out_arcs: list[int] = []
        for idx, vertex in enumerate(vertices):
            if vertex in seen:
                del out_arcs[seen[vertex]:]
                for w in vertices[seen[vertex] + 1: idx]:
                    seen.pop(w, None)
            seen[vertex] = len(out_arcs)
            if idx < len(arcs):
                out_arcs.append(arcs[idx])
        return out_arcs


def _directed_hops(
    net: ColoredNetwork,
    arc_filter: Iterable[int] | None,
    cost_override: Mapping[int, int] | None,
) -> list[tuple[int, int, int, int]]:
    """(tail, head, effective cost, arc id) tuples; undirected arcs both ways."""
    ids = sorted(arc_filter) if arc_filter is not None else range(len(net.arcs))
    override = cost_override or {}
    hops = []
    for i in ids:
        a = net.arcs[i]
        cost = override.get(i, a.cost)
        hops.append((a.tail, a.head, cost, i))
        if not net.directed:
            hops.append((a.head, a.tail, cost, i))
    return hops


def conservative_shortest(
    net: ColoredNetwork,
    arc_filter: Iterable[int] | None,
    source: int,
    cost_override: Mapping[int, int] | None = None,
) -> DistanceTable:
    """Exact single-source shortest distances, tolerating negative arcs.

    The filtered subgraph must be conservative (guaranteed when the
    instance validated and overrides only move costs toward zero); a
    negative cycle is still detected defensively and raised with a
    witness.
    """
    hops = _directed_hops(net, arc_filter, cost_override)
    dist: list[int | None] = [_UNREACHABLE] * net.num_vertices
    parent: list[int | None] = [None] * net.num_vertices
    dist[source] = 0
    for _ in range(net.num_vertices - 1):
        changed = False
        for tail, head, cost, arc_id in hops:
            d = dist[tail]
            if d is not None and (dist[head] is None or d + cost < dist[head]):
                dist[head] = d + cost
                parent[head] = arc_id
                changed = True
        if not changed:
            break
    else:
        for tail, head, cost, arc_id in hops:
            d = dist[tail]
            if d is not None and (dist[head] is None or d + cost < dist[head]):
                cycle = _witness_cycle(net, parent, head, arc_id)
                raise NegativeCycleError("negative cycle in filtered subgraph", cycle)
    return DistanceTable(source, tuple(dist), tuple(parent))


def _witness_cycle(net: ColoredNetwork, parent: list[int | None], head: int, arc_id: int) -> list[int]:
    parent[head] = arc_id
    seen: dict[int, int] = {}
    walked: list[int] = []
    v = head
    while v not in seen:
        seen[v] = len(walked)
        step = parent[v]
        if step is None:
            raise RuntimeError("negative-cycle witness walk bottomed out")
        walked.append(step)
        v = net.arcs[step].tail
    cycle = walked[seen[v]:]
    cycle.reverse()
    return cycle


def nonneg_shortest(
    net: ColoredNetwork,
    arc_filter: Iterable[int] | None,
    source: int,
    cost_override: Mapping[int, int] | None = None,
) -> DistanceTable:
    """Dijkstra over the filtered arcs; all effective costs must be >= 0."""
    hops = _directed_hops(net, arc_filter, cost_override)
    adjacency: dict[int, list[tuple[int, int, int]]] = {}
    for tail, head, cost, arc_id in hops:
        if cost < 0:
            raise ValueError(f"negative effective cost {cost} on arc {arc_id}")
        adjacency.setdefault(tail, []).append((head, cost, arc_id))
    dist: list[int | None] = [_UNREACHABLE] * net.num_vertices
    parent: list[int | None] = [None] * net.num_vertices
    dist[source] = 0
    heap = [(0, source)]
    done = set()
    while heap:
        d, v = heapq.heappop(heap)
        if v in done:
            continue
        done.add(v)
        for head, cost, arc_id in adjacency.get(v, ()):
            nd = d + cost
            if dist[head] is None or nd < dist[head]:
                dist[head] = nd
                parent[head] = arc_id
                heapq.heappush(heap, (nd, head))
    return DistanceTable(source, tuple(dist), tuple(parent))


def topological_order(net: ColoredNetwork, arc_filter: Iterable[int] | None = None) -> list[int] | None:
    """Kahn's algorithm over the filtered arcs; None means "has cycle".

    Ties are broken by vertex index, so the order is canonical.
    """
    if not net.directed:
        raise ValueError("topological order requires a directed network")
    ids = sorted(arc_filter) if arc_filter is not None else range(len(net.arcs))
    indegree = [0] * net.num_vertices
    out: dict[int, list[int]] = {}
    for i in ids:
        a = net.arcs[i]
        indegree[a.head] += 1
        out.setdefault(a.tail, []).append(a.head)
    heap = [v for v in range(net.num_vertices) if indegree[v] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for w in out.get(v, ()):
            indegree[w] -= 1
            if indegree[w] == 0:
                heapq.heappush(heap, w)
    if len(order) != net.num_vertices:
        return None
    return order


def shortest_st_in_color(
    net: ColoredNetwork,
    color: int,
    cost_override: Mapping[int, int] | None = None,
) -> tuple[list[int], int] | None:
    """Minimum-cost simple s-t path restricted to one color class.

    Effective costs must be nonnegative (callers normalize first); returns
    ``(ordered arc ids, cost)`` or None when t is unreachable in the class.
    """
    class_arcs = net.color_class(color)
    table = nonneg_shortest(net, class_arcs, net.s, cost_override)
    if not table.reachable(net.t):
        return None
    path = table.path_to(net.t, net)
    assert path is not None
    return path, table.dist[net.t]  # type: ignore[return-value]
