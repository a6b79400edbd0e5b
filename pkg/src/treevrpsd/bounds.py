"""Lower bounds, expected-length upper bounds, and per-trace certificates.

The two policy guarantees reduce to a single pair of inequalities on
closed forms: with ``floor = 2S`` and
``radial = (2/Q) * sum_i d(0,i) * E[demand_i]``,

* expected split cost   <= floor + radial   <= 2 * max(floor, radial),
* expected unsplit cost <= floor + 2*radial <= 3 * max(floor, radial),

and both ``floor`` and ``radial`` lower-bound the optimum.  The trace
certificate is the per-realization counterpart of ``radial`` computed
from an actual tour decomposition, and ``clairvoyant_edge_lb`` is the
edge-crossing bound that holds for every policy even with demands known
in advance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .demand import DemandModel, expectation
from .errors import InconsistentRealizationError
from .policy import RunTrace
from .tree import TreeInstance


@dataclass(frozen=True)
class BoundSet:
    """The five standing bound values of one instance."""

    tour_floor: float
    bertsimas: float
    combined_lb: float
    split_ub: float
    unsplit_ub: float


def tour_floor(tree: TreeInstance) -> float:
    """2S: every customer has demand >= 1, so the full DFS walk is a floor."""
    return 2.0 * tree.total_edge_length


def bertsimas_lb(tree: TreeInstance, model: DemandModel) -> float:
    """Demand-weighted radial bound (2/Q) * sum_i d(0,i) * E[demand_i]."""
    return (2.0 / tree.capacity) * math.fsum(
        tree.depot_dist[i] * expectation(pmf)
        for i, pmf in enumerate(model.pmfs, 1)
    )


def bound_set(tree: TreeInstance, model: DemandModel) -> BoundSet:
    floor = tour_floor(tree)
    radial = bertsimas_lb(tree, model)
    return BoundSet(
        tour_floor=floor,
        bertsimas=radial,
        combined_lb=max(floor, radial),
        split_ub=floor + radial,
        unsplit_ub=floor + 2.0 * radial,
    )


def trace_certificate(trace: RunTrace, tree: TreeInstance) -> float:
    """Per-realization certificate (2/Q) * sum_j d(0, farthest_j) * units_j.

    Each tour dispatches at most Q units and is at least twice as long
    as its farthest served customer's depot distance, so the sum never
    exceeds the trace's total length.
    """
    return (2.0 / tree.capacity) * math.fsum(
        tree.depot_dist[t.farthest] * t.load_dispatched
        for t in trace.tours
        if t.farthest is not None
    )


def clairvoyant_edge_lb(tree: TreeInstance, demands: Sequence[int]) -> float:
    """Edge-crossing bound for a known demand vector.

    Every edge whose below-subtree holds total demand D must be crossed
    at least 2*max(1, ceil(D/Q)) times by any feasible set of tours, so
    the weighted sum lower-bounds every policy, adaptive or clairvoyant.
    Demands above Q are legal here; the bound still applies.
    """
    n = tree.n_customers
    if len(demands) != n:
        raise InconsistentRealizationError(f"{len(demands)} demands for {n} customers")
    below = [0] * tree.vertex_count
    for v, q in enumerate(demands, 1):
        if not isinstance(q, int) or isinstance(q, bool) or q < 0:
            raise InconsistentRealizationError(f"demand {q!r} of customer {v} is not a nonnegative integer")
        below[v] = q
    for v in sorted(range(1, tree.vertex_count), key=lambda u: -tree.depth[u]):
        below[tree.parent[v]] += below[v]
    capacity = tree.capacity
    return math.fsum(
        2.0 * max(1, -(-below[v] // capacity)) * tree.edge_length[v]
        for v in range(1, tree.vertex_count)
    )
