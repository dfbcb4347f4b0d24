import pytest

import simpath as sp
from simpath.dagdp import (
    _product_search,
    _terminal_normalized,
    solve_exact_dag,
    solve_superset_dag,
)
from simpath.model import EXACT, SUPERSET, network_from_plain, solution_cost
from simpath.oracle import brute_force_solve
from simpath.reductions import gen_cnf_exact_dag, gen_tight_approx, random_network


def test_exact_t1(t1):
    report = solve_exact_dag(t1)
    assert report.feasible
    assert report.cost == 4
    assert report.arcs == frozenset({0, 1, 2, 3})
    assert report.cost == solution_cost(t1, report.arcs)


def test_superset_tight_example_picks_shared_arc():
    net = gen_tight_approx(2)
    report = solve_superset_dag(net)
    assert report.cost == 1
    assert report.arcs == frozenset({2})


def test_superset_t1(t1):
    assert solve_superset_dag(t1).cost == 4


def test_exact_sat_contradiction_infeasible():
    net, _ = gen_cnf_exact_dag(sp.CnfFormula(1, ((1,), (-1,))))
    assert not solve_exact_dag(net).feasible


def test_exact_sat_known_feasible_formula(sample_formula):
    net, _ = gen_cnf_exact_dag(sample_formula)
    report = solve_exact_dag(net)
    assert report.feasible
    assert sp.validate_solution(net, EXACT, report.arcs).feasible


def test_rejects_undirected():
    net = network_from_plain(False, 2, 0, 1, 1, [(0, 1, 1, {1})])
    with pytest.raises(sp.NotDagError):
        solve_exact_dag(net)


def test_rejects_cycle():
    net = network_from_plain(True, 2, 0, 1, 1, [(0, 1, 1, {1}), (1, 0, 1, {1})])
    with pytest.raises(sp.NotDagError):
        solve_superset_dag(net)


def test_state_budget_is_an_error(t1):
    with pytest.raises(sp.BudgetExceededError):
        solve_exact_dag(t1, max_states=2)


def test_pendant_normalization_keeps_solutions_clean():
    # s has an incoming arc and t an outgoing one; both are unusable on
    # any s-t path but force the pendant rewrite
    net = network_from_plain(
        True,
        4,
        1,
        2,
        1,
        [(1, 2, 3, {1}), (0, 1, 1, {1}), (2, 3, 1, {1})],
    )
    work, original = _terminal_normalized(net)
    assert work.num_vertices == 6
    assert original == 3
    report = solve_exact_dag(net)
    assert report.feasible
    assert report.arcs == frozenset({0})
    assert report.cost == 3


def _replay_color_arcs(net, variant):
    """Per-color arc id sequences induced by the optimal product path."""
    work, n_original = _terminal_normalized(net)
    negatives = frozenset(a.id for a in net.arcs if a.cost < 0)
    override = {i: 0 for i in negatives} if variant == SUPERSET else None
    result = _product_search(work, variant, override, 5_000_000)
    if result.cost is None:
        return None, None, None
    per_color = {i: [] for i in range(1, net.k + 1)}
    for arc_id, moved in result.moves:
        for color in moved:
            per_color[color].append(arc_id)
    return work, n_original, (result, per_color)


@pytest.mark.parametrize("seed", range(0, 60, 3))
def test_replaying_product_path_yields_per_color_paths(seed):
    net = random_network(seed, kind="dag", negatives=seed % 2 == 0)
    for variant in (EXACT, SUPERSET):
        work, _, outcome = _replay_color_arcs(net, variant)
        if outcome is None:
            continue
        _, per_color = outcome
        for color, arcs in per_color.items():
            sub = frozenset(arcs)
            if variant == EXACT:
                ok, _ = sp.is_exact_path_set(work, sub)
                assert ok
            else:
                assert sp.contains_st_path(work, sub)


@pytest.mark.parametrize("seed", range(1, 60, 3))
def test_superset_dedup_cost_equals_product_path_cost(seed):
    # under normalized costs an optimal product path traverses each arc once
    net = random_network(seed, kind="dag", negatives=seed % 2 == 0)
    work, _, outcome = _replay_color_arcs(net, SUPERSET)
    if outcome is None:
        return
    result, _ = outcome
    effective = {a.id: max(a.cost, 0) for a in work.arcs}
    path_cost = sum(effective[arc_id] for arc_id, _ in result.moves)
    dedup_cost = sum(effective[i] for i in {arc_id for arc_id, _ in result.moves})
    assert result.cost == path_cost == dedup_cost


@pytest.mark.parametrize("seed", range(2, 60, 3))
def test_matches_oracle_on_random_dags(seed):
    net = random_network(seed, kind="dag", negatives=seed % 2 == 0)
    for variant, solve in ((EXACT, solve_exact_dag), (SUPERSET, solve_superset_dag)):
        got = solve(net)
        want = brute_force_solve(net, variant)
        assert got == want


def test_agreement_with_fpt_on_dag_instances():
    for seed in range(30):
        net = random_network(800 + seed, kind="dag", negatives=seed % 3 == 0)
        a = solve_superset_dag(net)
        b = sp.solve_superset_fpt(net)
        assert a.feasible == b.feasible
        assert a.cost == b.cost
