import random

import pytest

import simpath as sp
from simpath.model import network_from_plain
from simpath import reductions as red


@pytest.fixture
def t1():
    """Canonical 4-vertex DAG used across the suite.

    a0: 0->1 cost 1 {1,2}; a1: 1->3 cost 1 {1}; a2: 1->2 cost 1 {2};
    a3: 2->3 cost 1 {2}; a4: 0->3 cost 5 {1}.
    """
    return network_from_plain(
        True,
        4,
        0,
        3,
        2,
        [
            (0, 1, 1, {1, 2}),
            (1, 3, 1, {1}),
            (1, 2, 1, {2}),
            (2, 3, 1, {2}),
            (0, 3, 5, {1}),
        ],
    )


@pytest.fixture
def sample_formula():
    return sp.CnfFormula(3, ((1, 2), (-1, 3), (-2, -3)))


@pytest.fixture
def sample_cover_system():
    return sp.CoverSystem(
        ("u1", "u2", "u3", "u4"),
        (frozenset({"u1"}), frozenset({"u1", "u2", "u3"}), frozenset({"u3", "u4"})),
    )


# ---------------------------------------------------------------------------
# Independent mini-oracles (deliberately written from scratch, no reuse of
# package path/search code)
# ---------------------------------------------------------------------------


def enumerate_simple_paths(net, arc_ids, src, dst):
    """All simple src-dst paths inside the arc subset, as (arc ids, cost)."""
    hops = {}
    for i in sorted(arc_ids):
        a = net.arcs[i]
        hops.setdefault(a.tail, []).append((i, a.head))
        if not net.directed:
            hops.setdefault(a.head, []).append((i, a.tail))
    found = []

    def walk(v, used_arcs, seen, cost):
        if v == dst:
            found.append((list(used_arcs), cost))
            return
        for arc_id, w in hops.get(v, ()):
            if w in seen:
                continue
            seen.add(w)
            used_arcs.append(arc_id)
            walk(w, used_arcs, seen, cost + net.arcs[arc_id].cost)
            used_arcs.pop()
            seen.remove(w)

    walk(src, [], {src}, 0)
    return found


def permuted_copy(net, rng):
    """Relabel arc ids by a random permutation; returns (net, new_to_old)."""
    perm = list(range(len(net.arcs)))
    rng.shuffle(perm)
    plain = [
        (net.arcs[old].tail, net.arcs[old].head, net.arcs[old].cost, set(net.arcs[old].colors))
        for old in perm
    ]
    new_to_old = dict(enumerate(perm))
    copy = network_from_plain(net.directed, net.num_vertices, net.s, net.t, net.k, plain)
    return copy, new_to_old


def build_acceptance_corpus(count=200, base_seed=5000):
    """Seeded criterion-4 corpus: DAG / general digraph / undirected round-robin,
    negatives on roughly a fifth of the instances (directed only)."""
    kinds = ("dag", "digraph", "undirected")
    corpus = []
    for i in range(count):
        kind = kinds[i % 3]
        # directed instances are 2/3 of the mix; i % 10 < 3 on top of that
        # puts negative costs on 20% of all instances
        negatives = kind != "undirected" and i % 10 < 3
        net = red.random_network(base_seed + i, kind=kind, negatives=negatives)
        corpus.append(net)
    return corpus


@pytest.fixture(scope="session")
def acceptance_corpus():
    return build_acceptance_corpus()
