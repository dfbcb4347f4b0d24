"""k-approximation for the superset variants.

One shortest s-t path per color class; the union is feasible by
construction and each path's cost lower-bounds the optimum, so the union
costs at most k times the optimum. The per-class tie-break (lowest arc
id first) deliberately realizes the tight two-vertex example as an exact
equality rather than an inequality.
"""

from __future__ import annotations

from .model import (
    SUPERSET,
    ColoredNetwork,
    SolutionReport,
    validate_solution,
)
from .paths import shortest_st_in_color


def k_union_approx(net: ColoredNetwork) -> SolutionReport:
    """Union of per-class shortest paths; infeasible verdict when some
    class disconnects the terminals.

    Directed networks are normalized first: negative arcs are forced into
    the solution and their search cost set to zero, as in the FPT solver.
    The reported cost uses original costs.
    """
    negatives = frozenset(a.id for a in net.arcs if a.cost < 0)
    override = {i: 0 for i in negatives}
    union: set[int] = set(negatives)
    for color in range(1, net.k + 1):
        found = shortest_st_in_color(net, color, override)
        if found is None:
            return SolutionReport(False, None, frozenset(), (), solver="approx")
        union.update(found[0])
    report = validate_solution(net, SUPERSET, frozenset(union), solver="approx")
    assert report.feasible
    return report
