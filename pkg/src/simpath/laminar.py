"""Polynomial solver for laminar color families.

A family is laminar when any two intersecting classes are nested. The
exact variant is feasible iff the family is a disjoint union of
inclusion-chains and the minimal class of every chain connects the
terminals; an optimal solution is then the disjoint union of one
shortest s-t path inside each minimal class. The superset variant only
needs the minimal classes to connect, takes a shortest path in each
under negative-costs-zeroed costs and adds all negative arcs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotLaminarError
from .model import (
    EXACT,
    SUPERSET,
    ColoredNetwork,
    SolutionReport,
    validate_solution,
)
from .paths import conservative_shortest, nonneg_shortest


@dataclass(frozen=True)
class LaminarAnalysis:
    """Structure of the color family, computed by pairwise set comparison.

    ``chains`` is present only when the family is a disjoint union of
    chains; ``minimal_members`` (one color per distinct inclusion-minimal
    class, lowest index wins) is present whenever the family is laminar.
    Equal classes are mutually nested and share a chain position.
    """

    laminar: bool
    union_of_chains: bool
    chains: tuple[tuple[int, ...], ...] | None
    minimal_members: tuple[int, ...] | None


def analyze_color_family(net: ColoredNetwork) -> LaminarAnalysis:
    classes = net.color_classes()
    colors = sorted(classes)
    for idx, a in enumerate(colors):
        for b in colors[idx + 1:]:
            sa, sb = classes[a], classes[b]
            if sa & sb and not (sa <= sb or sb <= sa):
                return LaminarAnalysis(False, False, None, None)

    # Components of the "intersects" relation; in a laminar family classes
    # of different components have disjoint arc sets.
    unvisited = set(colors)
    groups = []
    for color in colors:
        if color not in unvisited:
            continue
        stack = [color]
        unvisited.remove(color)
        members = []
        while stack:
            c = stack.pop()
            members.append(c)
            linked = [d for d in unvisited if classes[c] & classes[d]]
            for d in linked:
                unvisited.remove(d)
                stack.append(d)
        groups.append(sorted(members))

    union_of_chains = True
    chains = []
    minimal_members = []
    for members in groups:
        ordered = sorted(members, key=lambda c: (len(classes[c]), c))
        for idx in range(len(ordered) - 1):
            if not classes[ordered[idx]] <= classes[ordered[idx + 1]]:
                union_of_chains = False
        chains.append(tuple(ordered))
        minimal_sets = [
            c
            for c in members
            if not any(classes[d] < classes[c] for d in members if d != c)
        ]
        seen_sets = []
        for c in sorted(minimal_sets):
            if classes[c] not in seen_sets:
                seen_sets.append(classes[c])
                minimal_members.append(c)
    return LaminarAnalysis(
        laminar=True,
        union_of_chains=union_of_chains,
        chains=tuple(chains) if union_of_chains else None,
        minimal_members=tuple(sorted(minimal_members)),
    )


def solve_laminar(net: ColoredNetwork, variant: str) -> SolutionReport:
    """Optimal solution of either variant for a laminar color family."""
    analysis = analyze_color_family(net)
    if not analysis.laminar:
        raise NotLaminarError("color classes do not form a laminar family")
    assert analysis.minimal_members is not None
    classes = net.color_classes()

    if variant == EXACT:
        if not analysis.union_of_chains:
            return SolutionReport(False, None, frozenset(), (), solver="laminar")
        solution: set[int] = set()
        for color in analysis.minimal_members:
            table = (
                conservative_shortest(net, classes[color], net.s)
                if net.directed
                else nonneg_shortest(net, classes[color], net.s)
            )
            if not table.reachable(net.t):
                return SolutionReport(False, None, frozenset(), (), solver="laminar")
            solution.update(table.path_to(net.t, net))
        report = validate_solution(net, EXACT, frozenset(solution), solver="laminar")
        assert report.feasible
        return report

    if variant != SUPERSET:
        raise ValueError(f"unknown variant {variant!r}")
    negatives = frozenset(a.id for a in net.arcs if a.cost < 0)
    override = {i: 0 for i in negatives}
    solution = set(negatives)
    for color in analysis.minimal_members:
        table = nonneg_shortest(net, classes[color], net.s, override)
        if not table.reachable(net.t):
            return SolutionReport(False, None, frozenset(), (), solver="laminar")
        solution.update(table.path_to(net.t, net))
    report = validate_solution(net, SUPERSET, frozenset(solution), solver="laminar")
    assert report.feasible
    return report
