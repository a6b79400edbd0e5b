"""Rooted edge-weighted tree networks with the depot fixed at vertex 0.

A tree over vertices ``0..n`` is stored as parallel tuples indexed by
vertex: ``parent[v]`` and ``edge_length[v]`` describe the unique edge
from ``v`` up to its parent (the depot has no parent edge).  Depot
distances, depths, a sorted children adjacency, and the total edge
length ``S`` are precomputed at build time; instances are immutable
afterwards and safe to share between threads.

The a priori visiting order used throughout the library is the
depth-first preorder with children explored in ascending vertex index.
``closed_walk_length`` of any valid preorder equals ``2 * S`` up to
float accumulation: a depth-first walk crosses every edge exactly twice,
which is the refill-free floor for visiting all customers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    BadCapacityError,
    CycleOrForestError,
    InvalidOrderError,
    NonpositiveLengthError,
    UnknownVertexError,
)

# A visiting order is a permutation of customers 1..n; the depot is
# implicit at both ends of the walk.
VisitOrder = tuple[int, ...]


@dataclass(frozen=True)
class TreeInstance:
    """Validated tree network with precomputed metric data.

    Attributes
    ----------
    vertex_count:
        Number of vertices including the depot (n + 1).
    parent:
        ``parent[v]`` is the parent of ``v``; ``parent[0] == -1``.
    edge_length:
        ``edge_length[v]`` is the length of the edge (parent[v], v);
        ``edge_length[0] == 0.0``.
    capacity:
        Vehicle capacity Q >= 1.
    children:
        Children of each vertex in ascending index order.
    depot_dist:
        ``depot_dist[v]`` is the path distance from the depot to ``v``.
    depth:
        Edge count from the depot to each vertex.
    total_edge_length:
        S, the sum of all edge lengths.
    """

    vertex_count: int
    parent: tuple[int, ...]
    edge_length: tuple[float, ...]
    capacity: int
    children: tuple[tuple[int, ...], ...]
    depot_dist: tuple[float, ...]
    depth: tuple[int, ...]
    total_edge_length: float

    @property
    def n_customers(self) -> int:
        return self.vertex_count - 1


def build_tree(edges: Iterable[tuple[int, int, float]], capacity: int) -> TreeInstance:
    """Validate an edge list and construct a :class:`TreeInstance`.

    ``edges`` holds (parent, child, length) triples over vertices named
    densely 0..n with the depot at 0.  Raises ``CycleOrForestError`` if
    the edges do not form a single tree rooted at 0,
    ``NonpositiveLengthError`` for bad lengths, and ``BadCapacityError``
    for a capacity below 1.
    """
    if not isinstance(capacity, int) or isinstance(capacity, bool) or capacity < 1:
        raise BadCapacityError(f"capacity must be an integer >= 1, got {capacity!r}")

    edge_list = list(edges)
    n = len(edge_list)
    parent = [-1] * (n + 1)
    length = [0.0] * (n + 1)
    seen_children: set[int] = set()

    for p, c, ln in edge_list:
        if not isinstance(p, int) or not isinstance(c, int) or isinstance(p, bool) or isinstance(c, bool):
            raise CycleOrForestError(f"vertex names must be integers, got edge ({p!r}, {c!r})")
        if c == 0:
            raise CycleOrForestError("the depot (vertex 0) cannot appear as a child")
        if not (0 <= p <= n) or not (1 <= c <= n):
            raise CycleOrForestError(
                f"edge ({p}, {c}) names a vertex outside 0..{n}; vertices must be dense"
            )
        if c in seen_children:
            raise CycleOrForestError(f"vertex {c} appears as a child more than once")
        seen_children.add(c)
        if isinstance(ln, bool) or not isinstance(ln, (int, float)) or not math.isfinite(ln) or ln <= 0:
            raise NonpositiveLengthError(f"edge ({p}, {c}) has non-positive length {ln!r}")
        parent[c] = p
        length[c] = float(ln)

    # Each of 1..n appeared exactly once as a child, so every non-depot
    # vertex has a parent pointer; cycles are the remaining failure mode.
    depth = [-1] * (n + 1)
    dist = [0.0] * (n + 1)
    depth[0] = 0
    for v in range(1, n + 1):
        if depth[v] >= 0:
            continue
        chain = []
        u = v
        while depth[u] < 0:
            chain.append(u)
            u = parent[u]
            if len(chain) > n:
                raise CycleOrForestError("parent pointers contain a cycle")
        for w in reversed(chain):
            depth[w] = depth[parent[w]] + 1
            dist[w] = dist[parent[w]] + length[w]

    kids: list[list[int]] = [[] for _ in range(n + 1)]
    for v in range(1, n + 1):
        kids[parent[v]].append(v)

    return TreeInstance(
        vertex_count=n + 1,
        parent=tuple(parent),
        edge_length=tuple(length),
        capacity=capacity,
        children=tuple(tuple(sorted(k)) for k in kids),
        depot_dist=tuple(dist),
        depth=tuple(depth),
        total_edge_length=math.fsum(length),
    )


def _check_vertex(tree: TreeInstance, v: int) -> None:
    if not isinstance(v, int) or isinstance(v, bool) or not (0 <= v < tree.vertex_count):
        raise UnknownVertexError(f"vertex {v!r} outside 0..{tree.vertex_count - 1}")


def depot_distance(tree: TreeInstance, i: int) -> float:
    """Distance from the depot to vertex ``i`` along the unique path."""
    _check_vertex(tree, i)
    return tree.depot_dist[i]


def lowest_common_ancestor(tree: TreeInstance, i: int, j: int) -> int:
    _check_vertex(tree, i)
    _check_vertex(tree, j)
    while i != j:
        if tree.depth[i] >= tree.depth[j]:
            i = tree.parent[i]
        else:
            j = tree.parent[j]
    return i


def path_distance(tree: TreeInstance, i: int, j: int) -> float:
    """Tree shortest-path distance between vertices ``i`` and ``j``."""
    a = lowest_common_ancestor(tree, i, j)
    return tree.depot_dist[i] + tree.depot_dist[j] - 2.0 * tree.depot_dist[a]


def dfs_order(tree: TreeInstance) -> VisitOrder:
    """Depth-first preorder of the customers, ascending-child tie-break."""
    order: list[int] = []
    stack = [0]
    while stack:
        v = stack.pop()
        if v != 0:
            order.append(v)
        stack.extend(reversed(tree.children[v]))
    return tuple(order)


def check_preorder(tree: TreeInstance, order: Sequence[int]) -> None:
    """Raise ``InvalidOrderError`` unless ``order`` is a DFS preorder.

    A sequence is a preorder for some child ordering iff, scanning left
    to right with a stack of the currently open root path, each vertex's
    parent is still on the stack once deeper branches are popped.
    """
    seq = tuple(order)
    n = tree.n_customers
    if sorted(seq) != list(range(1, n + 1)):
        raise InvalidOrderError(f"order {seq!r} is not a permutation of 1..{n}")
    stack = [0]
    for v in seq:
        p = tree.parent[v]
        while stack and stack[-1] != p:
            stack.pop()
        if not stack:
            raise InvalidOrderError(
                f"order {seq!r} is not a preorder of this tree (vertex {v} "
                f"appears outside its parent's open subtree)"
            )
        stack.append(v)


def closed_walk_length(tree: TreeInstance, order: Sequence[int]) -> float:
    """Length of the closed walk depot, ``order``..., depot.

    ``order`` must be a valid DFS preorder; for such orders the result
    equals ``2 * total_edge_length`` up to float accumulation.
    """
    check_preorder(tree, order)
    stops = [0, *order, 0]
    return math.fsum(
        path_distance(tree, stops[k], stops[k + 1]) for k in range(len(stops) - 1)
    )
