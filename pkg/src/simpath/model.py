"""Instance model for simultaneous colored s-t path problems.

A :class:`ColoredNetwork` is a directed or undirected graph with two
terminals, integer arc costs and one or more color classes covering the
arc set. The two solution predicates live here as well:

* exact variant  -- the solution's intersection with every color class
  must *be* a simple s-t path;
* superset variant -- the intersection must merely *contain* an s-t path.

Costs are signed 64-bit integers on purpose: every construction used by
the generators is integral, and integer costs keep optimum-equality tests
free of tolerances.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

from .errors import InstanceFormatError

EXACT = "exact"
SUPERSET = "superset"
VARIANTS = (EXACT, SUPERSET)

ArcSet = frozenset[int]

_I64_MIN = -(2**63)
_I64_MAX = 2**63 - 1


@dataclass(frozen=True)
class ArcRecord:
    """One arc (or edge) of a network.

    For undirected networks ``tail``/``head`` are an unordered pair; the
    hosting network's ``directed`` flag selects the semantics everywhere.
    """

    id: int
    tail: int
    head: int
    cost: int
    colors: frozenset[int]


@dataclass(frozen=True)
class ColoredNetwork:
    """A validated problem instance.

    Invariants checked at construction: distinct in-range terminals, no
    self-loops, dense arc ids in list order, every color set a nonempty
    subset of ``{1, ..., k}``. Parallel arcs are permitted (several of the
    hardness constructions need them). Conservativeness of the cost
    function is *not* checked here; see :func:`validate_instance`.

    Instances are immutable; every operation in this package is a pure
    function, so concurrent use needs no coordination.
    """

    directed: bool
    num_vertices: int
    s: int
    t: int
    k: int
    arcs: tuple[ArcRecord, ...]

    def __post_init__(self):
        if self.num_vertices <= 0:
            raise InstanceFormatError("num_vertices must be positive")
        if self.k <= 0:
            raise InstanceFormatError("k must be positive")
        for name, v in (("s", self.s), ("t", self.t)):
            if not 0 <= v < self.num_vertices:
                raise InstanceFormatError(f"terminal {name}={v} out of range")
        if self.s == self.t:
            raise InstanceFormatError("terminals must be distinct")
        for pos, arc in enumerate(self.arcs):
            if arc.id != pos:
                raise InstanceFormatError(
                    f"arc ids must be dense list positions, got id {arc.id} at {pos}"
                )
            if not 0 <= arc.tail < self.num_vertices:
                raise InstanceFormatError(f"arc {pos}: tail {arc.tail} out of range")
            if not 0 <= arc.head < self.num_vertices:
                raise InstanceFormatError(f"arc {pos}: head {arc.head} out of range")
            if arc.tail == arc.head:
                raise InstanceFormatError(f"arc {pos}: self-loop at {arc.tail}")
            if not arc.colors:
                raise InstanceFormatError(f"arc {pos}: empty color set")
            if not all(1 <= c <= self.k for c in arc.colors):
                raise InstanceFormatError(
                    f"arc {pos}: color outside 1..{self.k}: {sorted(arc.colors)}"
                )
            if not _I64_MIN <= arc.cost <= _I64_MAX:
                raise InstanceFormatError(f"arc {pos}: cost outside signed 64-bit range")

    def color_class(self, color: int) -> ArcSet:
        """Arc ids belonging to the given color class (may be empty)."""
        return frozenset(a.id for a in self.arcs if color in a.colors)

    def color_classes(self) -> dict[int, ArcSet]:
        classes: dict[int, set[int]] = {i: set() for i in range(1, self.k + 1)}
        for a in self.arcs:
            for c in a.colors:
                classes[c].add(a.id)
        return {i: frozenset(ids) for i, ids in classes.items()}

    def all_arc_ids(self) -> ArcSet:
        return frozenset(range(len(self.arcs)))


def network_from_plain(
    directed: bool,
    num_vertices: int,
    s: int,
    t: int,
    k: int,
    arcs: list[tuple[int, int, int, set[int] | frozenset[int]]],
) -> ColoredNetwork:
    """Build a network from (tail, head, cost, colors) tuples; ids follow list order."""
    records = tuple(
        ArcRecord(i, tail, head, cost, frozenset(colors))
        for i, (tail, head, cost, colors) in enumerate(arcs)
    )
    return ColoredNetwork(directed, num_vertices, s, t, k, records)


@dataclass(frozen=True)
class SolutionReport:
    """Outcome of a solver or of solution validation.

    ``solver`` is provenance only and excluded from equality, so reports
    from different algorithms can be compared field-for-field.
    """

    feasible: bool
    cost: int | None
    arcs: ArcSet
    certificates: tuple[tuple[int, tuple[int, ...]], ...]
    solver: str = field(compare=False, default="")


@dataclass(frozen=True)
class ValidationReport:
    """Result of :func:`validate_instance`."""

    ok: bool
    errors: tuple[str, ...] = ()
    negative_cycle: tuple[int, ...] | None = None
    bad_arc: int | None = None


# ---------------------------------------------------------------------------
# Parsing and serialization
# ---------------------------------------------------------------------------


def parse_instance(text: str) -> ColoredNetwork:
    """Parse an instance document (UTF-8 JSON) into a network.

    The document is an object with fields "directed", "num_vertices",
    "s", "t", "k" and "arcs", where each arc is
    ``{"tail": int, "head": int, "cost": int, "colors": [int, ...]}`` and
    arc ids are array positions. Structural invariants are enforced;
    conservativeness is a separate check (:func:`validate_instance`).
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InstanceFormatError("instance document must be a JSON object")
    try:
        directed = doc["directed"]
        num_vertices = doc["num_vertices"]
        s = doc["s"]
        t = doc["t"]
        k = doc["k"]
        raw_arcs = doc["arcs"]
    except KeyError as exc:
        raise InstanceFormatError(f"missing field {exc}") from exc
    if not isinstance(directed, bool):
        raise InstanceFormatError("'directed' must be a boolean")
    for name, v in (("num_vertices", num_vertices), ("s", s), ("t", t), ("k", k)):
        if not isinstance(v, int) or isinstance(v, bool):
            raise InstanceFormatError(f"'{name}' must be an integer")
    if not isinstance(raw_arcs, list):
        raise InstanceFormatError("'arcs' must be an array")
    arcs = []
    for pos, entry in enumerate(raw_arcs):
        if not isinstance(entry, dict):
            raise InstanceFormatError(f"arc {pos}: must be an object")
        try:
            tail, head, cost = entry["tail"], entry["head"], entry["cost"]
            colors = entry["colors"]
        except KeyError as exc:
            raise InstanceFormatError(f"arc {pos}: missing field {exc}") from exc
        for name, v in (("tail", tail), ("head", head), ("cost", cost)):
            if not isinstance(v, int) or isinstance(v, bool):
                raise InstanceFormatError(f"arc {pos}: '{name}' must be an integer")
        if not isinstance(colors, list) or not all(
            isinstance(c, int) and not isinstance(c, bool) for c in colors
        ):
            raise InstanceFormatError(f"arc {pos}: 'colors' must be an integer array")
        arcs.append((tail, head, cost, frozenset(colors)))
    return network_from_plain(directed, num_vertices, s, t, k, arcs)


def serialize_instance(net: ColoredNetwork) -> str:
    """Serialize a network; ``parse_instance`` round-trips it field-for-field."""
    doc = {
        "directed": net.directed,
        "num_vertices": net.num_vertices,
        "s": net.s,
        "t": net.t,
        "k": net.k,
        "arcs": [
            {
                "tail": a.tail,
                "head": a.head,
                "cost": a.cost,
                "colors": sorted(a.colors),
            }
            for a in net.arcs
        ],
    }
    return json.dumps(doc, indent=2, sort_keys=True)


def solution_to_json(report: SolutionReport) -> str:
    doc = {
        "feasible": report.feasible,
        "cost": report.cost,
        "arcs": sorted(report.arcs),
        "certificates": [
            {"color": color, "path": list(path)} for color, path in report.certificates
        ],
        "solver": report.solver,
    }
    return json.dumps(doc, indent=2, sort_keys=True)


def solution_from_json(text: str) -> SolutionReport:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"not valid JSON: {exc}") from exc
    try:
        return SolutionReport(
            feasible=bool(doc["feasible"]),
            cost=doc["cost"],
            arcs=frozenset(doc["arcs"]),
            certificates=tuple(
                (entry["color"], tuple(entry["path"])) for entry in doc["certificates"]
            ),
            solver=doc.get("solver", ""),
        )
    except (KeyError, TypeError) as exc:
        raise InstanceFormatError(f"malformed solution document: {exc}") from exc


# ---------------------------------------------------------------------------
# Instance validation
# ---------------------------------------------------------------------------


def validate_instance(net: ColoredNetwork) -> ValidationReport:
    """Check the value-level invariants of a structurally valid network.

    Directed networks must have a conservative cost function (no
    negative-cost directed cycle); the check runs Bellman-Ford from an
    auxiliary super-source joined to every vertex by a zero-cost arc and
    reports a witness cycle on failure. Undirected networks must have
    nonnegative costs. Solvers may assume a validated instance.
    """
    if not net.directed:
        for a in net.arcs:
            if a.cost < 0:
                return ValidationReport(
                    ok=False,
                    errors=(f"negative undirected cost on arc {a.id}",),
                    bad_arc=a.id,
                )
        return ValidationReport(ok=True)

    # Super-source semantics: start every vertex at distance 0.
    dist = [0] * net.num_vertices
    parent: list[int | None] = [None] * net.num_vertices
    for _ in range(net.num_vertices - 1):
        changed = False
        for a in net.arcs:
            if dist[a.tail] + a.cost < dist[a.head]:
                dist[a.head] = dist[a.tail] + a.cost
                parent[a.head] = a.id
                changed = True
        if not changed:
            return ValidationReport(ok=True)
    for a in net.arcs:
        if dist[a.tail] + a.cost < dist[a.head]:
            cycle = _extract_cycle(net, parent, a)
            return ValidationReport(
                ok=False,
                errors=("negative cycle",),
                negative_cycle=tuple(cycle),
            )
    return ValidationReport(ok=True)


def _extract_cycle(net: ColoredNetwork, parent: list[int | None], last: ArcRecord) -> list[int]:
    """Walk parent arcs back from a still-improvable arc to recover a cycle."""
    parent[last.head] = last.id
    seen: dict[int, int] = {}
    walked: list[int] = []
    v = last.head
    while v not in seen:
        seen[v] = len(walked)
        arc_id = parent[v]
        if arc_id is None:
            raise RuntimeError("negative-cycle witness walk bottomed out")
        walked.append(arc_id)
        v = net.arcs[arc_id].tail
    cycle = walked[seen[v]:]
    cycle.reverse()
    return cycle


# ---------------------------------------------------------------------------
# Solution predicates
# ---------------------------------------------------------------------------


def _check_subset(net: ColoredNetwork, arcs: ArcSet) -> None:
    bad = [i for i in arcs if not 0 <= i < len(net.arcs)]
    if bad:
        raise InstanceFormatError(f"arc ids not in network: {sorted(bad)}")


def is_exact_path_set(net: ColoredNetwork, arcs: ArcSet) -> tuple[bool, list[int] | None]:
    """Is the arc set exactly a simple s-t path?

    Returns ``(True, ordered arc ids)`` or ``(False, None)``. Total
    predicate: no input raises. The empty set is never a path because the
    terminals are distinct.
    """
    _check_subset(net, arcs)
    if not arcs:
        return False, None
    records = [net.arcs[i] for i in sorted(arcs)]
    if net.directed:
        out: dict[int, ArcRecord] = {}
        for a in records:
            if a.tail in out:
                return False, None
            out[a.tail] = a
        path = []
        visited = {net.s}
        cur = net.s
        while cur != net.t:
            a = out.get(cur)
            if a is None:
                return False, None
            path.append(a.id)
            cur = a.head
            if cur in visited:
                return False, None
            visited.add(cur)
        if len(path) != len(records):
            return False, None
        return True, path
    # Undirected: degree 1 at the terminals, degree 2 inside, one component.
    incident: dict[int, list[ArcRecord]] = {}
    for a in records:
        incident.setdefault(a.tail, []).append(a)
        incident.setdefault(a.head, []).append(a)
    if len(incident.get(net.s, ())) != 1 or len(incident.get(net.t, ())) != 1:
        return False, None
    path = []
    visited = {net.s}
    cur = net.s
    prev_arc = None
    while cur != net.t:
        candidates = [a for a in incident.get(cur, ()) if a is not prev_arc]
        if cur != net.s and len(incident[cur]) != 2:
            return False, None
        if len(candidates) != 1:
            return False, None
        a = candidates[0]
        path.append(a.id)
        cur = a.head if a.tail == cur else a.tail
        if cur in visited:
            return False, None
        visited.add(cur)
        prev_arc = a
    if len(path) != len(records):
        return False, None
    return True, path


def contains_st_path(net: ColoredNetwork, arcs: ArcSet) -> bool:
    """Is t reachable from s using only the given arcs?"""
    _check_subset(net, arcs)
    adjacency: dict[int, list[int]] = {}
    for i in arcs:
        a = net.arcs[i]
        adjacency.setdefault(a.tail, []).append(a.head)
        if not net.directed:
            adjacency.setdefault(a.head, []).append(a.tail)
    seen = {net.s}
    queue = deque([net.s])
    while queue:
        v = queue.popleft()
        if v == net.t:
            return True
        for w in adjacency.get(v, ()):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return False


def solution_cost(net: ColoredNetwork, arcs: ArcSet) -> int:
    """Total cost of an arc subset, each arc counted once."""
    _check_subset(net, arcs)
    return sum(net.arcs[i].cost for i in arcs)


def _min_cost_path_within(net: ColoredNetwork, arcs: ArcSet) -> list[int] | None:
    """Minimum-cost s-t path using only the given arcs.

    Label-correcting with strict improvements, so it tolerates negative
    arcs as long as the instance is conservative; the parent walk is
    loop-erased defensively. Used for superset certificates: on instances
    with pairwise-distinct subset costs the returned path is unique, which
    keeps certificates invariant under arc relabeling.
    """
    records = [net.arcs[i] for i in sorted(arcs)]
    hops = [(a.tail, a.head, a.cost, a.id) for a in records]
    if not net.directed:
        hops += [(a.head, a.tail, a.cost, a.id) for a in records]
    dist: dict[int, int] = {net.s: 0}
    parent: dict[int, tuple[int, int]] = {}
    for _ in range(net.num_vertices - 1):
        changed = False
        for tail, head, cost, arc_id in hops:
            if tail in dist and dist[tail] + cost < dist.get(head, _I64_MAX):
                dist[head] = dist[tail] + cost
                parent[head] = (tail, arc_id)
                changed = True
        if not changed:
            break
    if net.t not in dist:
        return None
    path = []
    visited = {net.t}
    v = net.t
    while v != net.s:
        tail, arc_id = parent[v]
        path.append(arc_id)
        v = tail
        # Strict-improvement updates keep the parent graph acyclic on
        # conservative instances; guard against the impossible anyway.
        if v in visited:
            raise RuntimeError("parent cycle during certificate extraction")
        visited.add(v)
    path.reverse()
    return path


def validate_solution(
    net: ColoredNetwork, variant: str, arcs: ArcSet, solver: str = "check"
) -> SolutionReport:
    """Evaluate an arc set against the chosen variant.

    Feasible iff for every color the restriction of ``arcs`` to that class
    satisfies the variant's predicate. Certificates carry one witness path
    per feasible color (the restriction itself for the exact variant, a
    minimum-cost contained path for the superset variant); the cost field
    is filled only for feasible solutions.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    _check_subset(net, arcs)
    arcs = frozenset(arcs)
    certificates = []
    feasible = True
    for color in range(1, net.k + 1):
        sub = frozenset(i for i in arcs if color in net.arcs[i].colors)
        if variant == EXACT:
            ok, path = is_exact_path_set(net, sub)
        else:
            ok = contains_st_path(net, sub)
            path = _min_cost_path_within(net, sub) if ok else None
        if ok:
            certificates.append((color, tuple(path)))  # type: ignore[arg-type]
        else:
            feasible = False
    return SolutionReport(
        feasible=feasible,
        cost=solution_cost(net, arcs) if feasible else None,
        arcs=arcs if feasible else frozenset(),
        certificates=tuple(certificates),
        solver=solver,
    )


# ---------------------------------------------------------------------------
# Transformations
# ---------------------------------------------------------------------------


def multi_terminal_reduce(
    directed: bool,
    num_vertices: int,
    arcs: list[tuple[int, int, int, set[int] | frozenset[int]]],
    pairs: list[tuple[int, int]],
) -> ColoredNetwork:
    """Reduce a multi-terminal instance to the single-terminal form.

    Given one (s_i, t_i) pair per color i, adds two fresh vertices s and t
    and, for every color, the arcs s->s_i and t_i->t carrying color i.
    The auxiliary arcs get cost 0, which preserves the optimum of both
    variants exactly; the original arcs are unchanged and keep their ids.
    """
    k = len(pairs)
    if k == 0:
        raise InstanceFormatError("need at least one terminal pair")
    for i, (si, ti) in enumerate(pairs, start=1):
        if si == ti:
            raise InstanceFormatError(f"pair {i}: identical terminals {si}")
        if not (0 <= si < num_vertices and 0 <= ti < num_vertices):
            raise InstanceFormatError(f"pair {i}: terminal out of range")
    s = num_vertices
    t = num_vertices + 1
    extended = list(arcs)
    for i, (si, ti) in enumerate(pairs, start=1):
        extended.append((s, si, 0, {i}))
        extended.append((ti, t, 0, {i}))
    return network_from_plain(directed, num_vertices + 2, s, t, k, extended)


def multi_colored_arcs(net: ColoredNetwork) -> ArcSet:
    """Arcs belonging to at least two color classes (the FPT parameter)."""
    return frozenset(a.id for a in net.arcs if len(a.colors) >= 2)
