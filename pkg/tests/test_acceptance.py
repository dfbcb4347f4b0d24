"""Acceptance criteria, one test per criterion.

Each test prints a single CRITERION line (run with ``pytest -s`` to see
them live). Criterion 1's dag-dp half is expected to fail: the clause
construction behind cnf-superset instances contains directed cycles, so
a DAG-only solver cannot run on it; the fpt half carries the identity.
"""

import random
import time

import pytest

import simpath as sp
from simpath.model import EXACT, SUPERSET, multi_terminal_reduce
from simpath.oracle import brute_force_solve, enumerate_assignments, min_set_cover_bruteforce
from simpath.paths import topological_order
from simpath import reductions as red

from conftest import permuted_copy


def _line(num, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    suffix = f" - {detail}" if detail else ""
    print(f"CRITERION {num}: {status}{suffix}")


_SUPERSET_OPTIMA: dict[int, sp.SolutionReport] = {}


def _superset_optimum(index, net):
    if index not in _SUPERSET_OPTIMA:
        _SUPERSET_OPTIMA[index] = brute_force_solve(net, SUPERSET)
    return _SUPERSET_OPTIMA[index]


# ---------------------------------------------------------------------------
# 1. Three-clause sample formula, superset identity (cost exactly 25 = 5n + 2m + 4)
# ---------------------------------------------------------------------------


def test_criterion_1_superset_identity_via_fpt(sample_formula):
    best, _ = enumerate_assignments(sample_formula)
    assert best == 3  # m_s* = 3: the base constant is the whole optimum
    net, _ = red.gen_cnf_superset(sample_formula)
    start = time.monotonic()
    report = sp.solve_superset_fpt(net)
    elapsed = time.monotonic() - start
    ok = report.cost == 25 and elapsed < 10.0
    _line("1/fpt", ok, f"cost={report.cost} (want 25), {elapsed:.2f}s")
    assert report.cost == 25
    assert elapsed < 10.0


@pytest.mark.xfail(
    strict=True,
    raises=sp.NotDagError,
    reason="the cnf-superset construction contains directed cycles "
    "(e.g. a clause vertex reachable from a later chain exit), so the "
    "DAG-only product DP cannot run on it; see the decisions ledger",
)
def test_criterion_1_superset_identity_via_dag_dp(sample_formula):
    net, _ = red.gen_cnf_superset(sample_formula)
    _line("1/dag-dp", False, "construction is cyclic; dag-dp inapplicable (spec defect, documented)")
    report = sp.solve_superset_dag(net)
    assert report.cost == 25


# ---------------------------------------------------------------------------
# 2. Sample cover system: optimum exactly 2
# ---------------------------------------------------------------------------


def test_criterion_2_cover_system_optimum(sample_cover_system):
    start = time.monotonic()
    want = min_set_cover_bruteforce(sample_cover_system)
    net = red.gen_setcover_dag(sample_cover_system)
    fpt_cost = sp.solve_superset_fpt(net).cost
    oracle_cost = brute_force_solve(net, SUPERSET).cost
    dag_cost = sp.solve_superset_dag(net).cost  # k=4 stays far below the state budget
    elapsed = time.monotonic() - start
    ok = want == fpt_cost == oracle_cost == dag_cost == 2 and elapsed < 5.0
    _line("2", ok, f"cover={want} fpt={fpt_cost} oracle={oracle_cost} dag-dp={dag_cost}, {elapsed:.2f}s")
    assert (want, fpt_cost, oracle_cost, dag_cost) == (2, 2, 2, 2)
    assert elapsed < 5.0


# ---------------------------------------------------------------------------
# 3. Tight approximation family: optimum 1, approximation exactly k
# ---------------------------------------------------------------------------


def test_criterion_3_tight_family():
    results = []
    for k in range(1, 7):
        net = red.gen_tight_approx(k)
        optimum = brute_force_solve(net, SUPERSET)
        approx = sp.k_union_approx(net)
        results.append((k, optimum.cost, approx.cost))
    ok = all(opt == 1 and apx == k for k, opt, apx in results)
    _line("3", ok, " ".join(f"k={k}:opt={o},approx={a}" for k, o, a in results))
    for k, opt, apx in results:
        assert opt == 1
        assert apx == k


# ---------------------------------------------------------------------------
# 4. Oracle-equivalence suite: 200 seeded random instances
# ---------------------------------------------------------------------------


def test_criterion_4_oracle_equivalence(acceptance_corpus):
    start = time.monotonic()
    mismatches = []
    negative_count = 0
    for index, net in enumerate(acceptance_corpus):
        assert sp.validate_instance(net).ok
        if any(a.cost < 0 for a in net.arcs):
            negative_count += 1
        is_dag = net.directed and topological_order(net) is not None

        exact_want = brute_force_solve(net, EXACT)
        superset_want = _superset_optimum(index, net)

        if is_dag:
            if sp.solve_exact_dag(net) != exact_want:
                mismatches.append((index, "dag-dp", EXACT))
            if sp.solve_superset_dag(net) != superset_want:
                mismatches.append((index, "dag-dp", SUPERSET))
        if sp.solve_superset_fpt(net) != superset_want:
            mismatches.append((index, "fpt", SUPERSET))
        if sp.analyze_color_family(net).laminar:
            if sp.solve_laminar(net, EXACT) != exact_want:
                mismatches.append((index, "laminar", EXACT))
            if sp.solve_laminar(net, SUPERSET) != superset_want:
                mismatches.append((index, "laminar", SUPERSET))
        verdict = sp.solve_exact_existence_fpt(net)
        if verdict.feasible != exact_want.feasible:
            mismatches.append((index, "existence-fpt", EXACT))
        elif verdict.feasible and not sp.validate_solution(net, EXACT, verdict.arcs).feasible:
            mismatches.append((index, "existence-fpt", "witness"))
    elapsed = time.monotonic() - start
    ok = not mismatches and elapsed < 120.0
    _line(
        "4",
        ok,
        f"{len(acceptance_corpus)} instances ({negative_count} with negative costs), "
        f"{len(mismatches)} mismatches, {elapsed:.1f}s",
    )
    assert mismatches == []
    assert elapsed < 120.0
    assert negative_count >= 30  # ~20% of the corpus


# ---------------------------------------------------------------------------
# 5. Random 2SAT3 identity: opt - (5n + 2m + 4) = m - m_s*
# ---------------------------------------------------------------------------


def test_criterion_5_random_2sat3_identity():
    failures = []
    for seed in range(30):
        rng = random.Random(4100 + seed)
        # two formulas at the n=4 ceiling (2^16 subsets each), the rest smaller
        n = 4 if seed in (7, 23) else rng.choice([2, 2, 3, 3, 3])
        formula = red.random_formula(rng, n, 2)
        m = len(formula.clauses)
        best, _ = enumerate_assignments(formula)
        net, _ = red.gen_cnf_superset(formula)
        optimum = sp.solve_superset_fpt(net).cost
        if optimum - (5 * n + 2 * m + 4) != m - best:
            failures.append((seed, n, m, optimum, best))
    _line("5", not failures, f"30 formulas, {len(failures)} identity violations")
    assert failures == []


# ---------------------------------------------------------------------------
# 6. Exact-DAG SAT corpus: feasibility == exactly-one-true flag
# ---------------------------------------------------------------------------


def test_criterion_6_exact_dag_sat_corpus(sample_formula):
    contradiction = sp.CnfFormula(1, ((1,), (-1,)))
    net_c, _ = red.gen_cnf_exact_dag(contradiction)
    contradiction_ok = not sp.solve_exact_dag(net_c).feasible

    net_f, _ = red.gen_cnf_exact_dag(sample_formula)
    known_ok = sp.solve_exact_dag(net_f).feasible

    mismatches = []
    for seed in range(25):
        rng = random.Random(4300 + seed)
        formula = red.random_formula(rng, rng.choice([2, 3, 3, 4]), 3)
        _, exactly_one = enumerate_assignments(formula)
        net, _ = red.gen_cnf_exact_dag(formula)
        if sp.solve_exact_dag(net).feasible != exactly_one:
            mismatches.append(seed)
    ok = contradiction_ok and known_ok and not mismatches
    _line(
        "6",
        ok,
        f"contradiction infeasible={contradiction_ok}, known formula feasible={known_ok}, "
        f"25 random formulas with {len(mismatches)} mismatches",
    )
    assert contradiction_ok
    assert known_ok
    assert mismatches == []


# ---------------------------------------------------------------------------
# 7. FPT invariance: arc permutation and thread count
# ---------------------------------------------------------------------------


def test_criterion_7_fpt_invariance():
    kinds = ("dag", "digraph", "undirected")
    failures = []
    for i in range(50):
        kind = kinds[i % 3]
        net = red.random_network(4500 + i, kind=kind, negatives=kind != "undirected" and i % 4 == 0)
        base = sp.solve_superset_fpt(net)
        if sp.solve_superset_fpt(net, workers=4) != base:
            failures.append((i, "threads"))
        copy, new_to_old = permuted_copy(net, random.Random(i))
        relabeled = sp.solve_superset_fpt(copy)
        same = relabeled.feasible == base.feasible and relabeled.cost == base.cost
        if same and base.feasible:
            same = frozenset(new_to_old[a] for a in relabeled.arcs) == base.arcs
        if not same:
            failures.append((i, "permutation"))
    _line("7", not failures, f"50 instances, {len(failures)} invariance failures")
    assert failures == []


# ---------------------------------------------------------------------------
# 8. Approximation bound property on the criterion-4 corpus
# ---------------------------------------------------------------------------


def test_criterion_8_approximation_bound(acceptance_corpus):
    violations = []
    checked = 0
    for index, net in enumerate(acceptance_corpus):
        optimum = _superset_optimum(index, net)
        if not optimum.feasible:
            continue
        checked += 1
        approx = sp.k_union_approx(net)
        assert approx.feasible
        # the ratio guarantee is stated for the normalized cost function
        # (negatives zeroed, negative arcs forced in); on instances with
        # negative optima the raw chain opt <= k*opt is arithmetically void
        shift = sum(a.cost for a in net.arcs if a.cost < 0)
        opt_n = optimum.cost - shift
        apx_n = approx.cost - shift
        if not opt_n <= apx_n <= net.k * opt_n:
            violations.append(index)
        if all(a.cost >= 0 for a in net.arcs):
            if not optimum.cost <= approx.cost <= net.k * optimum.cost:
                violations.append(index)
    _line("8", not violations, f"{checked} superset-feasible instances, {len(violations)} violations")
    assert violations == []
    assert checked >= 80


# ---------------------------------------------------------------------------
# 9. The asymptotic approximation bound is not reproducible
# ---------------------------------------------------------------------------


def test_criterion_9_asymptotic_bound_substituted():
    # The k-approximation's worst-case guarantee and the matching
    # APX/ln k hardness are asymptotic statements about all instances;
    # no finite test reproduces them. Criteria 3 (tight family) and 8
    # (bound property) stand in for them, so re-verify their cores here.
    net = red.gen_tight_approx(4)
    tight_ok = (
        brute_force_solve(net, SUPERSET).cost == 1
        and sp.k_union_approx(net).cost == 4
    )
    sample = red.random_network(4999, kind="dag")
    optimum = brute_force_solve(sample, SUPERSET)
    bound_ok = True
    if optimum.feasible:
        approx = sp.k_union_approx(sample)
        bound_ok = optimum.cost <= approx.cost <= sample.k * optimum.cost
    ok = tight_ok and bound_ok
    _line("9", ok, "asymptotic bound not reproducible; substituted by criteria 3 and 8")
    assert tight_ok
    assert bound_ok


# ---------------------------------------------------------------------------
# 10. Multi-terminal reduction preserves optima
# ---------------------------------------------------------------------------


def _reaches(directed, arcs, src, dst):
    adjacency = {}
    for tail, head, _, _ in arcs:
        adjacency.setdefault(tail, []).append(head)
        if not directed:
            adjacency.setdefault(head, []).append(tail)
    seen, stack = {src}, [src]
    while stack:
        v = stack.pop()
        if v == dst:
            return True
        for w in adjacency.get(v, ()):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return False


def _is_simple_path(directed, arcs, src, dst):
    if not arcs:
        return False
    if directed:
        out = {}
        for tail, head, _, _ in arcs:
            if tail in out:
                return False
            out[tail] = head
        cur, seen, steps = src, {src}, 0
        while cur != dst:
            if cur not in out:
                return False
            cur = out.pop(cur)
            if cur in seen:
                return False
            seen.add(cur)
            steps += 1
        return steps == len(arcs)
    degree = {}
    incident = {}
    for idx, (tail, head, _, _) in enumerate(arcs):
        degree[tail] = degree.get(tail, 0) + 1
        degree[head] = degree.get(head, 0) + 1
        incident.setdefault(tail, []).append((idx, head))
        incident.setdefault(head, []).append((idx, tail))
    if degree.get(src) != 1 or degree.get(dst) != 1:
        return False
    cur, seen, prev, steps = src, {src}, None, 0
    while cur != dst:
        if cur != src and degree.get(cur) != 2:
            return False
        step = [(i, w) for i, w in incident.get(cur, ()) if i != prev]
        if len(step) != 1:
            return False
        prev, cur = step[0]
        if cur in seen:
            return False
        seen.add(cur)
        steps += 1
    return steps == len(arcs)


def _direct_multi_pair_optimum(directed, arcs, pairs, variant):
    predicate = _is_simple_path if variant == EXACT else _reaches
    best = None
    for mask in range(1 << len(arcs)):
        chosen = [arcs[j] for j in range(len(arcs)) if mask >> j & 1]
        feasible = True
        for color, (si, ti) in enumerate(pairs, start=1):
            restriction = [a for a in chosen if color in a[3]]
            if not predicate(directed, restriction, si, ti):
                feasible = False
                break
        if feasible:
            cost = sum(a[2] for a in chosen)
            if best is None or cost < best:
                best = cost
    return best


def test_criterion_10_multi_terminal_reduction():
    failures = []
    for i in range(20):
        directed, n, arcs, pairs = red.random_multi_pair_instance(4700 + i)
        reduced = multi_terminal_reduce(directed, n, arcs, pairs)
        assert sp.validate_instance(reduced).ok
        for variant in (EXACT, SUPERSET):
            want = _direct_multi_pair_optimum(directed, arcs, pairs, variant)
            got = brute_force_solve(reduced, variant)
            got_cost = got.cost if got.feasible else None
            if want != got_cost:
                failures.append((i, variant, want, got_cost))
    _line("10", not failures, f"20 instances x 2 variants, {len(failures)} mismatches")
    assert failures == []
