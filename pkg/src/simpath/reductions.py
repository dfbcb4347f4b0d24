"""Instance generators behind the hardness constructions, plus corpus plumbing.

Each generator follows its construction verbatim; the CNF-based ones also
emit a vertex-name map (index -> gadget role such as "w3", "v2_1", "c4",
"s_2") so assignments can be read back out of solutions without
re-deriving layouts. The random generators at the bottom build seeded,
deterministic test corpora.

Random corpus costs are signed distinct powers of two. Distinct subset
sums make optima unique, so solver-versus-oracle comparisons can assert
full report equality; keeping the largest magnitudes on the
cycle-closing arcs makes every directed cost function conservative by
construction.
"""

from __future__ import annotations

import random
import re

from .errors import InstanceFormatError
from .model import (
    ArcSet,
    ColoredNetwork,
    _min_cost_path_within,
    network_from_plain,
)
from .oracle import CnfFormula, CoverSystem

PlainArcs = list[tuple[int, int, int, set[int] | frozenset[int]]]


# ---------------------------------------------------------------------------
# Exact-variant NP-hardness: two disjoint dipaths
# ---------------------------------------------------------------------------


def gen_two_disjoint(
    num_vertices: int,
    arcs: list[tuple[int, int]],
    s1: int,
    t1: int,
    s2: int,
    t2: int,
) -> ColoredNetwork:
    """Encode a TwoDisjointDipaths instance as an exact k=2 instance.

    Color 1 is the whole input digraph plus the arc t1->s2; color 2 is the
    three-arc chain s1->t1->s2->t2. All costs are zero, the terminals are
    s1 and t2, and the single multi-colored arc is t1->s2. Exact
    feasibility of the output is equivalent to the existence of
    vertex-disjoint s1-t1 and s2-t2 dipaths in the input.
    """
    terminals = (s1, t1, s2, t2)
    if len(set(terminals)) != 4:
        raise InstanceFormatError(f"terminals must be 4 distinct vertices: {terminals}")
    for v in terminals:
        if not 0 <= v < num_vertices:
            raise InstanceFormatError(f"terminal {v} out of range")
    if (s1, t1) in arcs or (s2, t2) in arcs:
        raise InstanceFormatError("arcs s1->t1 and s2->t2 must be absent from the input")
    plain: PlainArcs = []
    bridge_placed = False
    for tail, head in arcs:
        # only one copy of t1->s2 joins color 2, even on multigraph input
        if (tail, head) == (t1, s2) and not bridge_placed:
            plain.append((tail, head, 0, {1, 2}))
            bridge_placed = True
        else:
            plain.append((tail, head, 0, {1}))
    if not bridge_placed:
        plain.append((t1, s2, 0, {1, 2}))
    plain.append((s1, t1, 0, {2}))
    plain.append((s2, t2, 0, {2}))
    return network_from_plain(True, num_vertices, s1, t2, 2, plain)


def gen_inapprox_gadget(net: ColoredNetwork) -> ColoredNetwork:
    """Add the two unit-cost parallel s-t arcs that make any approximation
    ratio decide the underlying existence question.

    The input must come from :func:`gen_two_disjoint`. Arc a1 joins color
    1 and a2 color 2; everything else keeps cost 0, so the optimum is 0
    iff the source instance was exact-feasible, while feasibility itself
    always holds (take {a1, a2}).
    """
    if net.k != 2 or not net.directed:
        raise InstanceFormatError("expected a k=2 directed instance from gen_two_disjoint")
    plain: PlainArcs = [(a.tail, a.head, a.cost, set(a.colors)) for a in net.arcs]
    plain.append((net.s, net.t, 1, {1}))
    plain.append((net.s, net.t, 1, {2}))
    return network_from_plain(True, net.num_vertices, net.s, net.t, 2, plain)


# ---------------------------------------------------------------------------
# CNF gadget constructions
# ---------------------------------------------------------------------------


def check_formula_for_generator(formula: CnfFormula, max_clause_size: int) -> None:
    """Enforce the occurrence pattern the gadget constructions assume."""
    counts: dict[int, list[int]] = {v: [] for v in range(1, formula.num_variables + 1)}
    for j, clause in enumerate(formula.clauses, start=1):
        if len(clause) > max_clause_size:
            raise InstanceFormatError(f"clause {j} larger than {max_clause_size}")
        seen_vars = set()
        for lit in clause:
            var = abs(lit)
            if var in seen_vars:
                raise InstanceFormatError(f"variable {var} repeats inside clause {j}")
            seen_vars.add(var)
            counts[var].append(lit)
    for var, lits in counts.items():
        if not 2 <= len(lits) <= 3:
            raise InstanceFormatError(f"variable {var} occurs {len(lits)} times, need 2 or 3")
        if not any(lit > 0 for lit in lits) or not any(lit < 0 for lit in lits):
            raise InstanceFormatError(f"variable {var} must appear in both polarities")


def _occurrence_wiring(formula: CnfFormula):
    """Per variable: (j1, j2, optional (j3, positive?)) with 1-based clauses."""
    occ: dict[int, list[tuple[int, bool]]] = {
        v: [] for v in range(1, formula.num_variables + 1)
    }
    for j, clause in enumerate(formula.clauses, start=1):
        for lit in clause:
            occ[abs(lit)].append((j, lit > 0))
    wiring = {}
    for var, entries in occ.items():
        j1 = min(j for j, positive in entries if positive)
        j2 = min(j for j, positive in entries if not positive)
        rest = [e for e in entries if e not in ((j1, True), (j2, False))]
        wiring[var] = (j1, j2, rest[0] if rest else None)
    return wiring


def _variable_block(names: list[str], var: int) -> None:
    names.append(f"w{var}")
    names.extend(f"v{var}_{p}" for p in range(1, 5))
    names.extend(f"u{var}_{p}" for p in range(1, 5))


def gen_cnf_superset(formula: CnfFormula) -> tuple[ColoredNetwork, dict[int, str]]:
    """MAX-2SAT3 formula as a two-color superset instance, all costs 1.

    Color 1 holds the variable chains between the terminals; color 2
    holds everything incident to the clause vertices plus the four middle
    arcs of every variable gadget. Optimal value is (5n + 2m + 4) +
    (m - m_s*), which the tests assert against exhaustive assignment
    enumeration.
    """
    check_formula_for_generator(formula, max_clause_size=2)
    n, m = formula.num_variables, len(formula.clauses)
    names: list[str] = ["s"]
    for var in range(1, n + 1):
        _variable_block(names, var)
    names.append(f"w{n + 1}")
    names.extend(f"c{j}" for j in range(1, m + 2))
    names.append("t")
    index = {name: i for i, name in enumerate(names)}
    s, t = index["s"], index["t"]

    plain: PlainArcs = []

    def add(tail_name: str, head_name: str, colors: set[int]) -> None:
        plain.append((index[tail_name], index[head_name], 1, colors))

    add("s", "w1", {1})
    for var in range(1, n + 1):
        for prefix in ("v", "u"):
            hops = [f"w{var}"] + [f"{prefix}{var}_{p}" for p in range(1, 5)] + [f"w{var + 1}"]
            for a, b in zip(hops, hops[1:]):
                middle = a[0] == prefix and b[0] == prefix and (
                    (a.endswith("_1") and b.endswith("_2"))
                    or (a.endswith("_3") and b.endswith("_4"))
                )
                add(a, b, {1, 2} if middle else {1})
    add(f"w{n + 1}", "t", {1})
    add("s", "c1", {2})
    wiring = _occurrence_wiring(formula)
    for var in range(1, n + 1):
        j1, j2, third = wiring[var]
        add(f"c{j1}", f"v{var}_1", {2})
        add(f"v{var}_2", f"c{j1 + 1}", {2})
        add(f"c{j2}", f"u{var}_1", {2})
        add(f"u{var}_2", f"c{j2 + 1}", {2})
        if third is not None:
            j3, positive = third
            prefix = "v" if positive else "u"
            add(f"c{j3}", f"{prefix}{var}_3", {2})
            add(f"{prefix}{var}_4", f"c{j3 + 1}", {2})
    add(f"c{m + 1}", "t", {2})

    net = network_from_plain(True, len(names), s, t, 2, plain)
    return net, dict(enumerate(names))


def gen_cnf_exact_dag(formula: CnfFormula) -> tuple[ColoredNetwork, dict[int, str]]:
    """3SAT3 formula as an exact-variant DAG instance, all costs 0, k=m+1.

    Color j (one per clause) consists of s->s_j, t_j->t and the arcs of
    every length-3 s_j-t_j dipath; color m+1 is the variable-chain class.
    The instance is exact-feasible iff some assignment makes exactly one
    literal true in every clause, which is what the tests assert (the
    stricter-than-satisfiability behavior is documented in the README).
    """
    check_formula_for_generator(formula, max_clause_size=3)
    n, m = formula.num_variables, len(formula.clauses)
    chain = m + 1
    names: list[str] = ["s"]
    for var in range(1, n + 1):
        _variable_block(names, var)
    names.append(f"w{n + 1}")
    for j in range(1, m + 1):
        names.append(f"s_{j}")
        names.append(f"t_{j}")
    names.append("t")
    index = {name: i for i, name in enumerate(names)}
    s, t = index["s"], index["t"]

    wiring = _occurrence_wiring(formula)
    multi: dict[tuple[str, str], int] = {}  # wired middle arc -> clause color
    for var in range(1, n + 1):
        j1, j2, third = wiring[var]
        multi[(f"v{var}_1", f"v{var}_2")] = j1
        multi[(f"u{var}_1", f"u{var}_2")] = j2
        if third is not None:
            j3, positive = third
            prefix = "v" if positive else "u"
            multi[(f"{prefix}{var}_3", f"{prefix}{var}_4")] = j3

    plain: PlainArcs = []

    def add(tail_name: str, head_name: str, colors: set[int]) -> None:
        plain.append((index[tail_name], index[head_name], 0, colors))

    add("s", "w1", {chain})
    for var in range(1, n + 1):
        for prefix in ("v", "u"):
            hops = [f"w{var}"] + [f"{prefix}{var}_{p}" for p in range(1, 5)] + [f"w{var + 1}"]
            for a, b in zip(hops, hops[1:]):
                colors = {chain}
                if (a, b) in multi:
                    colors = {chain, multi[(a, b)]}
                add(a, b, colors)
    add(f"w{n + 1}", "t", {chain})
    for j in range(1, m + 1):
        add("s", f"s_{j}", {j})
        add(f"t_{j}", "t", {j})
    for var in range(1, n + 1):
        j1, j2, third = wiring[var]
        add(f"s_{j1}", f"v{var}_1", {j1})
        add(f"v{var}_2", f"t_{j1}", {j1})
        add(f"s_{j2}", f"u{var}_1", {j2})
        add(f"u{var}_2", f"t_{j2}", {j2})
        if third is not None:
            j3, positive = third
            prefix = "v" if positive else "u"
            add(f"s_{j3}", f"{prefix}{var}_3", {j3})
            add(f"{prefix}{var}_4", f"t_{j3}", {j3})

    net = network_from_plain(True, len(names), s, t, chain, plain)
    return net, dict(enumerate(names))


def extract_assignment(
    net: ColoredNetwork, vertex_names: dict[int, str], solution: ArcSet
) -> dict[int, bool]:
    """Read a truth assignment off a feasible solution of a CNF instance.

    The variable-chain class is identified through the s->w1 arc; the
    solution's restriction to that class is walked from s and each
    variable reports true iff the walk enters its positive chain.
    """
    index = {name: i for i, name in vertex_names.items()}
    n = sum(1 for name in vertex_names.values() if re.fullmatch(r"w\d+", name)) - 1
    if n < 1 or "s" not in index or "w1" not in index:
        raise InstanceFormatError("metadata does not describe a CNF gadget instance")
    chain_arcs = [a for a in net.arcs if a.tail == index["s"] and a.head == index["w1"]]
    if len(chain_arcs) != 1 or len(chain_arcs[0].colors) != 1:
        raise InstanceFormatError("cannot identify the variable-chain color class")
    (chain_color,) = chain_arcs[0].colors
    sub = frozenset(i for i in solution if chain_color in net.arcs[i].colors)
    path = _min_cost_path_within(net, sub)
    if path is None:
        raise InstanceFormatError("solution has no terminal-to-terminal chain path")
    visited = {net.s}
    cur = net.s
    for arc_id in path:
        a = net.arcs[arc_id]
        cur = a.head if a.tail == cur else a.tail
        visited.add(cur)
    assignment = {}
    for var in range(1, n + 1):
        if index[f"v{var}_1"] in visited:
            assignment[var] = True
        elif index[f"u{var}_1"] in visited:
            assignment[var] = False
        else:
            raise InstanceFormatError(f"solution traverses neither chain of variable {var}")
    return assignment


# ---------------------------------------------------------------------------
# Set cover and the tight approximation family
# ---------------------------------------------------------------------------


def gen_setcover_dag(system: CoverSystem) -> ColoredNetwork:
    """SetCover as parallel unit-cost s-t arcs, one color per element."""
    if not system.universe or not system.sets:
        raise InstanceFormatError("need a nonempty universe and family")
    element_color = {u: i for i, u in enumerate(system.universe, start=1)}
    plain: PlainArcs = []
    for pos, members in enumerate(system.sets):
        if not members:
            raise InstanceFormatError(f"set {pos} is empty (would make a colorless arc)")
        plain.append((0, 1, 1, {element_color[u] for u in members}))
    return network_from_plain(True, 2, 0, 1, len(system.universe), plain)


def gen_tight_approx(k: int) -> ColoredNetwork:
    """Two vertices, k+1 parallel unit arcs, class i = {a_i, a_(k+1)}.

    Optimum 1 (the shared arc); the per-class lowest-id tie-break makes
    the k-approximation pay exactly k.
    """
    if k < 1:
        raise InstanceFormatError("k must be positive")
    plain: PlainArcs = [(0, 1, 1, {i}) for i in range(1, k + 1)]
    plain.append((0, 1, 1, set(range(1, k + 1))))
    return network_from_plain(True, 2, 0, 1, k, plain)


def forget_orientation(net: ColoredNetwork) -> ColoredNetwork:
    """Drop arc directions; costs must already be nonnegative."""
    for a in net.arcs:
        if a.cost < 0:
            raise InstanceFormatError(f"arc {a.id} has negative cost {a.cost}")
    return ColoredNetwork(False, net.num_vertices, net.s, net.t, net.k, net.arcs)


# ---------------------------------------------------------------------------
# Seeded random corpus plumbing
# ---------------------------------------------------------------------------


def random_formula(rng: random.Random, n: int, max_clause_size: int) -> CnfFormula:
    """Random formula with the generator occurrence pattern (2SAT3/3SAT3)."""
    literals: list[int] = []
    for var in range(1, n + 1):
        if rng.random() < 0.5:
            literals += [var, -var]
        elif rng.random() < 0.5:
            literals += [var, var, -var]
        else:
            literals += [var, -var, -var]
    rng.shuffle(literals)
    clauses = []
    pool = list(literals)
    while pool:
        distinct = len({abs(lit) for lit in pool})
        size = min(rng.randint(2, max_clause_size) if max_clause_size > 1 else 1, distinct)
        clause: list[int] = []
        used = set()
        for lit in list(pool):
            if len(clause) == size:
                break
            if abs(lit) not in used:
                clause.append(lit)
                used.add(abs(lit))
                pool.remove(lit)
        clauses.append(tuple(clause))
    formula = CnfFormula(n, tuple(clauses))
    check_formula_for_generator(formula, max_clause_size)
    return formula


def random_cover_system(rng: random.Random, max_elements: int = 6, max_sets: int = 8) -> CoverSystem:
    size = rng.randint(2, max_elements)
    universe = tuple(f"u{i}" for i in range(1, size + 1))
    count = rng.randint(2, max_sets)
    sets = []
    for _ in range(count):
        members = frozenset(u for u in universe if rng.random() < 0.45)
        if not members:
            members = frozenset({rng.choice(universe)})
        sets.append(members)
    return CoverSystem(universe, tuple(sets))


def random_digraph(
    rng: random.Random,
    num_vertices: int,
    num_arcs: int,
    avoid: set[tuple[int, int]] = frozenset(),
) -> list[tuple[int, int]]:
    arcs = []
    attempts = 0
    while len(arcs) < num_arcs and attempts < 50 * num_arcs:
        attempts += 1
        tail, head = rng.sample(range(num_vertices), 2)
        if (tail, head) in avoid:
            continue
        arcs.append((tail, head))
    return arcs


def random_network(
    seed: int,
    kind: str = "dag",
    negatives: bool = False,
    max_vertices: int = 7,
    max_arcs: int = 12,
    max_k: int = 3,
    max_multi: int = 6,
) -> ColoredNetwork:
    """Seeded random instance with unique-subset-sum costs.

    ``kind`` is "dag", "digraph" (cycles allowed) or "undirected".
    Negative costs are only placed on forward arcs and only with smaller
    magnitudes than any cycle-closing arc, so directed cost functions are
    conservative by construction. Roughly half the color classes receive
    a direct s-t arc so that feasible and infeasible instances both occur.
    """
    if kind not in ("dag", "digraph", "undirected"):
        raise ValueError(f"unknown kind {kind!r}")
    rng = random.Random(seed)
    directed = kind != "undirected"
    n = rng.randint(3, max_vertices)
    k = rng.randint(1, max_k)
    s, t = rng.sample(range(n), 2)

    position = list(range(n))
    rng.shuffle(position)
    if position[s] > position[t]:
        position[s], position[t] = position[t], position[s]

    structural: list[tuple[int, int, bool]] = []  # (tail, head, backward)
    body = rng.randint(max(2, k), max_arcs - 1)
    for _ in range(body):
        tail, head = rng.sample(range(n), 2)
        if not directed or kind == "dag":
            if position[tail] > position[head]:
                tail, head = head, tail
            structural.append((tail, head, False))
        else:
            backward = position[tail] > position[head]
            if backward and rng.random() < 0.6:
                tail, head = head, tail
                backward = False
            structural.append((tail, head, backward))
    for _ in range(k):
        if rng.random() < 0.55 and len(structural) < max_arcs:
            structural.append((s, t, False))

    colors_of: list[set[int]] = []
    for _ in structural:
        roll = rng.random()
        width = 1 if roll < 0.68 or k == 1 else (2 if roll < 0.93 or k == 2 else 3)
        colors_of.append(set(rng.sample(range(1, k + 1), width)))
    multi_positions = [i for i, cs in enumerate(colors_of) if len(cs) >= 2]
    while len(multi_positions) > max_multi:
        pos = multi_positions.pop(rng.randrange(len(multi_positions)))
        colors_of[pos] = {rng.choice(sorted(colors_of[pos]))}

    backward_idx = [i for i, (_, _, back) in enumerate(structural) if back]
    forward_idx = [i for i, (_, _, back) in enumerate(structural) if not back]
    ordered = list(range(len(structural)))
    top = ordered[len(forward_idx):]
    bottom = ordered[: len(forward_idx)]
    rng.shuffle(top)
    rng.shuffle(bottom)
    cost_of = {}
    for i, exp in zip(backward_idx, top):
        cost_of[i] = 2**exp
    for i, exp in zip(forward_idx, bottom):
        magnitude = 2**exp
        negate = negatives and directed and rng.random() < 0.4
        cost_of[i] = -magnitude if negate else magnitude

    plain: PlainArcs = [
        (tail, head, cost_of[i], colors_of[i])
        for i, (tail, head, _) in enumerate(structural)
    ]
    return network_from_plain(directed, n, s, t, k, plain)


def random_multi_pair_instance(
    seed: int, max_vertices: int = 6, max_arcs: int = 10, max_k: int = 3
) -> tuple[bool, int, PlainArcs, list[tuple[int, int]]]:
    """Raw multi-terminal instance for exercising the terminal reduction."""
    rng = random.Random(seed)
    directed = rng.random() < 0.7
    n = rng.randint(3, max_vertices)
    k = rng.randint(1, max_k)
    m = rng.randint(k, max_arcs)
    exponents = list(range(m))
    rng.shuffle(exponents)
    plain: PlainArcs = []
    for i in range(m):
        tail, head = rng.sample(range(n), 2)
        width = 1 if rng.random() < 0.7 or k == 1 else 2
        colors = set(rng.sample(range(1, k + 1), width))
        plain.append((tail, head, 2 ** exponents[i], colors))
    pairs = []
    for _ in range(k):
        pairs.append(tuple(rng.sample(range(n), 2)))
    return directed, n, plain, pairs
