"""Brute-force oracles and random builders shared by the test suite.

Everything here recomputes results from first principles: adjacency
search for distances, literal rule-following for the policies, full
set-partition enumeration for tour optima.  Tests compare library
output against these second routes instead of against the library
itself.
"""

from __future__ import annotations

import itertools
import math
import random
from typing import Iterator, Sequence

from treevrpsd import (
    DemandModel,
    TreeInstance,
    build_tree,
    make_pmf,
)

# Halves are exact in binary, so brute and library sums agree bitwise
# on most instances and within 1e-9 otherwise.
EDGE_LENGTHS = (0.5, 1.0, 1.5, 2.0, 2.5, 3.0)


def brute_distances(edges: Sequence[tuple[int, int, float]], vertex_count: int) -> list[list[float]]:
    """All-pairs distances by depth-first accumulation over the adjacency."""
    adjacency: dict[int, list[tuple[int, float]]] = {v: [] for v in range(vertex_count)}
    for parent, child, length in edges:
        adjacency[parent].append((child, length))
        adjacency[child].append((parent, length))
    matrix = []
    for source in range(vertex_count):
        dist = {source: 0.0}
        stack = [source]
        while stack:
            u = stack.pop()
            for w, length in adjacency[u]:
                if w not in dist:
                    dist[w] = dist[u] + length
                    stack.append(w)
        matrix.append([dist[v] for v in range(vertex_count)])
    return matrix


def naive_policy_events(
    dist: Sequence[Sequence[float]],
    order: Sequence[int],
    demands: Sequence[int],
    initial_load: int,
    capacity: int,
    policy: str,
) -> list[tuple]:
    """Event list from a literal reading of the delivery rules.

    ``demands`` is indexed by customer id (entry v-1 belongs to customer
    v).  Events are ("move", frm, to), ("serve", v, units) and
    ("breakpoint", v, kind).
    """
    events: list[tuple] = []
    position = 0
    stock = initial_load

    def move(dest: int) -> None:
        nonlocal position
        events.append(("move", position, dest))
        position = dest

    for idx, v in enumerate(order):
        final = idx == len(order) - 1
        q = demands[v - 1]
        move(v)
        if q < stock:
            events.append(("serve", v, q))
            stock -= q
        elif q == stock:
            events.append(("breakpoint", v, "exact"))
            events.append(("serve", v, q))
            stock = 0
            if not final:
                move(0)
                stock = capacity
        else:
            events.append(("breakpoint", v, "deficit"))
            if policy == "split":
                shortfall = q - stock
                events.append(("serve", v, stock))
                move(0)
                stock = shortfall if final else capacity
                move(v)
                events.append(("serve", v, shortfall))
                stock -= shortfall
            else:
                arrival = stock
                move(0)
                move(v)
                events.append(("serve", v, q))
                stock = 0
                if not final:
                    move(0)
                    stock = capacity + arrival - q
                    move(v)
    if position != 0:
        move(0)
    return events


def naive_policy_cost(
    dist: Sequence[Sequence[float]],
    order: Sequence[int],
    demands: Sequence[int],
    initial_load: int,
    capacity: int,
    policy: str,
) -> float:
    events = naive_policy_events(dist, order, demands, initial_load, capacity, policy)
    return math.fsum(dist[e[1]][e[2]] for e in events if e[0] == "move")


def independent_expected_cost(
    edges: Sequence[tuple[int, int, float]],
    capacity: int,
    pmfs: Sequence[dict[int, float]],
    order: Sequence[int],
    policy: str,
) -> float:
    """Expected cost by exhaustive (demand vector, load) enumeration.

    Uses only the brute machinery in this module, never the library's
    evaluator, so worked-example constants are confirmed twice.
    """
    vertex_count = len(edges) + 1
    dist = brute_distances(edges, vertex_count)
    terms = []
    supports = [sorted(pmf.items()) for pmf in pmfs]
    for combo in itertools.product(*supports):
        demands = tuple(value for value, _ in combo)
        prob = math.prod(weight for _, weight in combo)
        for load in range(1, capacity + 1):
            cost = naive_policy_cost(dist, order, demands, load, capacity, policy)
            terms.append(prob * cost / capacity)
    return math.fsum(terms)


# -- partition brute force ----------------------------------------------------

def all_set_partitions(items: Sequence[int]) -> Iterator[list[list[int]]]:
    """Every partition of ``items`` into non-empty unlabeled groups."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for smaller in all_set_partitions(rest):
        for i in range(len(smaller)):
            yield smaller[:i] + [[first] + smaller[i]] + smaller[i + 1 :]
        yield smaller + [[first]]


def brute_optimal_partition_cost(
    edges: Sequence[tuple[int, int, float]],
    capacity: int,
    demands: Sequence[int],
) -> float:
    """Cheapest capacity-feasible grouping, one depot round trip per group."""
    parent = {child: (par, length) for par, child, length in edges}

    def path_vertices(v: int) -> set[int]:
        seen = set()
        while v != 0:
            seen.add(v)
            v = parent[v][0]
        return seen

    n = len(demands)
    best = math.inf
    for grouping in all_set_partitions(list(range(1, n + 1))):
        if any(sum(demands[v - 1] for v in group) > capacity for group in grouping):
            continue
        cost = 0.0
        for group in grouping:
            covered: set[int] = set()
            for v in group:
                covered |= path_vertices(v)
            cost += 2.0 * math.fsum(parent[v][1] for v in covered)
        best = min(best, cost)
    return best


# -- random builders ----------------------------------------------------------

def random_edges(rng: random.Random, n: int) -> list[tuple[int, int, float]]:
    """Random-attachment tree on customers 1..n with half-integer lengths."""
    return [(rng.randrange(v), v, rng.choice(EDGE_LENGTHS)) for v in range(1, n + 1)]


def random_instance(rng: random.Random, n: int, capacity: int) -> TreeInstance:
    return build_tree(random_edges(rng, n), capacity)


def random_pmf_dict(
    rng: random.Random, capacity: int, max_support: int = 3, min_support: int = 1
) -> dict[int, float]:
    hi = min(max_support, capacity)
    size = rng.randint(min(min_support, hi), hi)
    values = rng.sample(range(1, capacity + 1), size)
    weights = [rng.randint(1, 8) for _ in values]
    total = sum(weights)
    return {value: weight / total for value, weight in zip(values, weights)}


def random_model(
    rng: random.Random, tree: TreeInstance, max_support: int = 3, min_support: int = 1
) -> DemandModel:
    pmfs = tuple(
        make_pmf(
            random_pmf_dict(rng, tree.capacity, max_support, min_support).items(),
            tree.capacity,
        )
        for _ in range(tree.n_customers)
    )
    return DemandModel(pmfs=pmfs, capacity=tree.capacity)


def pmf_dicts(model: DemandModel) -> list[dict[int, float]]:
    return [dict(pmf.mass) for pmf in model.pmfs]


def joint_demand_vectors(model: DemandModel) -> Iterator[tuple[tuple[int, ...], float]]:
    """Exhaustive joint support with product weights, by plain itertools."""
    supports = [pmf.mass for pmf in model.pmfs]
    for combo in itertools.product(*supports):
        yield tuple(v for v, _ in combo), math.prod(w for _, w in combo)


def assert_trace_matches_naive(tree: TreeInstance, trace, dist, order, demands, load) -> None:
    """Event-by-event comparison of a library trace against the naive rules."""
    expected = naive_policy_events(dist, order, demands, load, tree.capacity, trace.policy)
    got = []
    for ev in trace.events:
        if ev[0] == "move":
            got.append(("move", ev[1], ev[2]))
        elif ev[0] == "serve":
            got.append(("serve", ev[1], ev[2]))
        else:
            got.append(("breakpoint", ev[1], ev[2]))
    assert got == expected
    for frm, to, length in trace.movements:
        assert math.isclose(length, dist[frm][to], rel_tol=1e-9, abs_tol=1e-12)
    assert math.isclose(
        trace.total_length,
        naive_policy_cost(dist, order, demands, load, tree.capacity, trace.policy),
        rel_tol=1e-9,
        abs_tol=1e-12,
    )
