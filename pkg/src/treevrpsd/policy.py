"""Fixed-order delivery walks with a randomized initial load.

Both policies follow the same a priori visiting order and travel along
tree shortest paths.  At a customer with demand ``q`` and on-board
stock ``U`` the vehicle either

* serves and moves on (``q < U``),
* serves, restocks to Q at the depot, and heads to the next stop from
  there (``q == U``, breakpoint kind ``"exact"``), or
* runs short (``q > U``, breakpoint kind ``"deficit"``), where the two
  policies differ:

  - ``split``   delivers the U on board, fetches a full load, and
    delivers the remainder on return;
  - ``unsplit`` holds the delivery, fetches exactly ``q``, delivers it
    in one visit, then restocks to ``Q + U - q`` before moving on, so
    its stock matches split's from that point onward.

After the final customer the vehicle returns to the depot without any
pointless restocking: an exact-final customer triggers no refill trip,
and a deficit-final customer triggers a single round trip that fetches
just the remainder (split) or the full demand (unsplit).

Whether a customer is a breakpoint depends only on the demand prefix
sums and the initial load (``arithmetic_breakpoints`` states the
closed-form condition), which is why the two policies break at the same
customers with the same stock afterwards.  Averaged over the uniform
initial load l in {1..Q}, each customer is a breakpoint with
probability exactly q_i/Q.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .demand import Realization
from .errors import InconsistentRealizationError
from .tree import TreeInstance, VisitOrder, check_preorder, path_distance

SPLIT = "split"
UNSPLIT = "unsplit"
POLICIES = (SPLIT, UNSPLIT)


@dataclass(frozen=True)
class ServiceEvent:
    """One delivery: ``delivered`` units handed over at ``customer``."""

    customer: int
    delivered: int
    load_before: int
    load_after: int


@dataclass(frozen=True)
class Tour:
    """Maximal depot-to-depot segment of the walk.

    ``customers_served`` lists (vertex, units) in service order;
    ``farthest`` is the served vertex of maximal depot distance (lowest
    index on ties, ``None`` if the segment served nobody) and ``length``
    is the segment's travel distance.
    """

    customers_served: tuple[tuple[int, int], ...]
    load_dispatched: int
    farthest: int | None
    length: float


@dataclass(frozen=True)
class RunTrace:
    """Complete record of one policy execution.

    ``events`` is the chronological log the other fields are derived
    from: ``("move", frm, to, dist)``, ``("serve", customer, units,
    load_before, load_after)``, and ``("breakpoint", customer, kind)``
    entries in execution order.  ``post_customer_loads`` gives the
    on-board stock at the moment the vehicle leaves each customer for
    the next a priori stop (or ends the run), in visiting order.
    """

    policy: str
    movements: tuple[tuple[int, int, float], ...]
    services: tuple[ServiceEvent, ...]
    breakpoints: frozenset[int]
    breakpoint_kinds: Mapping[int, str]
    post_customer_loads: tuple[int, ...]
    tours: tuple[Tour, ...]
    total_length: float
    events: tuple[tuple, ...]


def _check_realization(tree: TreeInstance, order: Sequence[int], r: Realization) -> None:
    n = tree.n_customers
    q = tree.capacity
    if len(r.demands) != n:
        raise InconsistentRealizationError(
            f"realization has {len(r.demands)} demands for {n} customers"
        )
    for idx, d in enumerate(r.demands, 1):
        if not isinstance(d, int) or isinstance(d, bool) or not (1 <= d <= q):
            raise InconsistentRealizationError(f"demand {d!r} of customer {idx} outside 1..{q}")
    if not isinstance(r.initial_load, int) or isinstance(r.initial_load, bool) or not (1 <= r.initial_load <= q):
        raise InconsistentRealizationError(f"initial load {r.initial_load!r} outside 1..{q}")
    check_preorder(tree, order)


def _build_tours(events: Sequence[tuple], depot_dist: Sequence[float]) -> tuple[Tour, ...]:
    tours: list[Tour] = []
    seg_lengths: list[float] = []
    seg_serves: list[tuple[int, int]] = []
    for ev in events:
        if ev[0] == "move":
            _, _, to, dist = ev
            seg_lengths.append(dist)
            if to == 0:
                farthest = None
                if seg_serves:
                    best = max(depot_dist[v] for v, _ in seg_serves)
                    farthest = min(v for v, _ in seg_serves if depot_dist[v] == best)
                tours.append(
                    Tour(
                        customers_served=tuple(seg_serves),
                        load_dispatched=sum(u for _, u in seg_serves),
                        farthest=farthest,
                        length=math.fsum(seg_lengths),
                    )
                )
                seg_lengths = []
                seg_serves = []
        elif ev[0] == "serve":
            seg_serves.append((ev[1], ev[2]))
    return tuple(tours)


def _execute(tree: TreeInstance, order: Sequence[int], r: Realization, policy: str) -> RunTrace:
    _check_realization(tree, order, r)
    capacity = tree.capacity
    events: list[tuple] = []
    position = 0
    load = r.initial_load
    post_loads: list[int] = []
    kinds: dict[int, str] = {}
    seq = tuple(order)
    n = len(seq)

    def move(dest: int) -> None:
        nonlocal position
        events.append(("move", position, dest, path_distance(tree, position, dest)))
        position = dest

    def serve(v: int, units: int, before: int) -> None:
        events.append(("serve", v, units, before, before - units))

    for idx, v in enumerate(seq):
        q = r.demands[v - 1]
        last = idx == n - 1
        move(v)
        if q < load:
            serve(v, q, load)
            load -= q
        elif q == load:
            kinds[v] = "exact"
            events.append(("breakpoint", v, "exact"))
            serve(v, q, load)
            load = 0
            if not last:
                move(0)
                load = capacity
        else:
            kinds[v] = "deficit"
            events.append(("breakpoint", v, "deficit"))
            if policy == SPLIT:
                remainder = q - load
                serve(v, load, load)
                move(0)
                load = remainder if last else capacity
                move(v)
                serve(v, remainder, load)
                load -= remainder
            else:
                arrival = load
                move(0)
                load = q
                move(v)
                serve(v, q, load)
                load = 0
                if not last:
                    move(0)
                    load = capacity + arrival - q
                    move(v)
        post_loads.append(load)

    if position != 0:
        move(0)

    ev = tuple(events)
    movements = tuple((e[1], e[2], e[3]) for e in ev if e[0] == "move")
    services = tuple(ServiceEvent(e[1], e[2], e[3], e[4]) for e in ev if e[0] == "serve")
    return RunTrace(
        policy=policy,
        movements=movements,
        services=services,
        breakpoints=frozenset(kinds),
        breakpoint_kinds=kinds,
        post_customer_loads=tuple(post_loads),
        tours=_build_tours(ev, tree.depot_dist),
        total_length=math.fsum(m[2] for m in movements),
        events=ev,
    )


def run_split(tree: TreeInstance, order: VisitOrder, r: Realization) -> RunTrace:
    """Execute the split-delivery policy on one realization."""
    return _execute(tree, order, r, SPLIT)


def run_unsplit(tree: TreeInstance, order: VisitOrder, r: Realization) -> RunTrace:
    """Execute the unsplit-delivery policy on one realization."""
    return _execute(tree, order, r, UNSPLIT)


def format_trace(trace: RunTrace) -> str:
    """Line-oriented dump of a trace for golden-file comparisons.

    One line per event: ``MOVE from to dist``, ``SERVE node units
    load_before load_after``, ``BREAKPOINT node kind``.
    """
    lines = []
    for ev in trace.events:
        if ev[0] == "move":
            lines.append(f"MOVE {ev[1]} {ev[2]} {ev[3]!r}")
        elif ev[0] == "serve":
            lines.append(f"SERVE {ev[1]} {ev[2]} {ev[3]} {ev[4]}")
        else:
            lines.append(f"BREAKPOINT {ev[1]} {ev[2]}")
    return "\n".join(lines) + ("\n" if lines else "")


def arithmetic_breakpoints(demands: Sequence[int], initial_load: int, capacity: int) -> set[int]:
    """Breakpoint positions from prefix sums, no simulation.

    ``demands`` is indexed by visiting position.  Position i (1-based)
    is a breakpoint iff some integer p >= 0 puts the restock level
    ``initial_load + p*capacity`` inside the half-open prefix interval
    (sum of the first i-1 demands, sum of the first i].  Exact integer
    arithmetic throughout.
    """
    bps: set[int] = set()
    prefix = 0
    for i, q in enumerate(demands, 1):
        low = prefix
        prefix += q
        p = max(0, (low - initial_load) // capacity + 1)
        if initial_load + p * capacity <= prefix:
            bps.add(i)
    return bps


def breakpoint_probability_exact(demands: Sequence[int], capacity: int, position: int) -> Fraction:
    """Exact probability that ``position`` is a breakpoint under uniform l.

    Counts the initial loads in {1..Q} for which
    :func:`arithmetic_breakpoints` flags the position; the result always
    equals ``demands[position-1] / capacity``.
    """
    hits = sum(
        1
        for load in range(1, capacity + 1)
        if position in arithmetic_breakpoints(demands, load, capacity)
    )
    return Fraction(hits, capacity)


class WalkGeometry:
    """Per-(tree, order) precomputation for O(n) cost evaluation.

    Exact expectation and Monte Carlo need only the walk length, not the
    full trace.  The cost of a run is the closed-walk base plus, per
    breakpoint, a detour term that depends only on the customer's
    position: an exact breakpoint reroutes via the depot (extra
    ``2*d(0, lca(v, next))``, zero at the final stop) and a deficit
    breakpoint adds depot round trips (one for split, two mid-walk for
    unsplit).  Costs agree with ``run_split``/``run_unsplit`` totals up
    to float accumulation.
    """

    __slots__ = ("capacity", "base_length", "demand_index", "round_trip", "reroute_extra")

    def __init__(self, tree: TreeInstance, order: Sequence[int]):
        check_preorder(tree, order)
        seq = tuple(order)
        stops = [0, *seq, 0]
        legs = [path_distance(tree, stops[k], stops[k + 1]) for k in range(len(stops) - 1)]
        self.capacity = tree.capacity
        self.base_length = math.fsum(legs)
        self.demand_index = tuple(v - 1 for v in seq)
        self.round_trip = tuple(2.0 * tree.depot_dist[v] for v in seq)
        # Detour for heading to the next stop via the depot instead of the
        # direct leg: d(0,v) + d(0,next) - direct == 2*d(0, lca(v, next)).
        self.reroute_extra = tuple(
            tree.depot_dist[seq[k]] + tree.depot_dist[stops[k + 2]] - legs[k + 1]
            for k in range(len(seq))
        )

    def split_cost(self, demands: Sequence[int], initial_load: int) -> float:
        capacity = self.capacity
        load = initial_load
        extra = 0.0
        final = len(self.demand_index) - 1
        for i, di in enumerate(self.demand_index):
            q = demands[di]
            if q < load:
                load -= q
            elif q == load:
                extra += self.reroute_extra[i]
                load = capacity if i < final else 0
            else:
                extra += self.round_trip[i]
                load = capacity - (q - load) if i < final else 0
        return self.base_length + extra

    def unsplit_cost(self, demands: Sequence[int], initial_load: int) -> float:
        capacity = self.capacity
        load = initial_load
        extra = 0.0
        final = len(self.demand_index) - 1
        for i, di in enumerate(self.demand_index):
            q = demands[di]
            if q < load:
                load -= q
            elif q == load:
                extra += self.reroute_extra[i]
                load = capacity if i < final else 0
            else:
                if i < final:
                    extra += 2.0 * self.round_trip[i]
                    load = capacity - (q - load)
                else:
                    extra += self.round_trip[i]
                    load = 0
        return self.base_length + extra

    def cost(self, policy: str, demands: Sequence[int], initial_load: int) -> float:
        if policy == SPLIT:
            return self.split_cost(demands, initial_load)
        if policy == UNSPLIT:
            return self.unsplit_cost(demands, initial_load)
        raise ValueError(f"unknown policy {policy!r}")
