"""Simple undirected graphs with dense zero-based vertex ids.

Graphs are immutable once built.  Neighbour sets are kept both as sorted
tuples (for deterministic iteration) and as integer bitmasks (for the
clique and independent-set searches, which do a lot of set intersection).
"""

from __future__ import annotations

import random
from itertools import combinations
from typing import Iterable, Optional, Sequence


class GraphError(ValueError):
    """Raised for malformed graphs or invalid graph operations."""


class Graph:
    __slots__ = ("_adj", "_masks", "_labels")

    def __init__(self, adjacency: Sequence[Iterable[int]], labels: Optional[Sequence[str]] = None):
        adj = tuple(tuple(sorted(set(nbrs))) for nbrs in adjacency)
        n = len(adj)
        for v, nbrs in enumerate(adj):
            for u in nbrs:
                if not 0 <= u < n:
                    raise GraphError(f"vertex {v} has out-of-range neighbour {u}")
                if u == v:
                    raise GraphError(f"self-loop at vertex {v}")
        for v, nbrs in enumerate(adj):
            for u in nbrs:
                if v not in adj[u]:
                    raise GraphError(f"asymmetric adjacency between {v} and {u}")
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != n:
                raise GraphError(f"expected {n} labels, got {len(labels)}")
        self._adj = adj
        self._masks = tuple(sum(1 << u for u in nbrs) for nbrs in adj)
        self._labels = labels

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], labels=None) -> "Graph":
        """Build a graph on ``n`` vertices; duplicate edges are rejected."""
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for {n} vertices")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if v in adj[u]:
                raise GraphError(f"duplicate edge ({u}, {v})")
            adj[u].add(v)
            adj[v].add(u)
        return cls(adj, labels)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls.from_edges(n, combinations(range(n), 2))

    @classmethod
    def empty(cls, n: int = 0) -> "Graph":
        return cls([()] * n)

    @property
    def vertex_count(self) -> int:
        return len(self._adj)

    def __len__(self) -> int:
        return len(self._adj)

    @property
    def labels(self) -> Optional[tuple[str, ...]]:
        return self._labels

    def label(self, v: int) -> str:
        return self._labels[v] if self._labels is not None else str(v)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def neighbor_mask(self, v: int) -> int:
        return self._masks[v]

    @property
    def masks(self) -> tuple[int, ...]:
        return self._masks

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return (self._masks[u] >> v) & 1 == 1

    def edges(self) -> list[tuple[int, int]]:
        """Sorted edge list, each edge as ``(u, v)`` with ``u < v``."""
        return [(u, v) for u, nbrs in enumerate(self._adj) for v in nbrs if u < v]

    @property
    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self._adj) // 2

    def with_labels(self, labels: Optional[Sequence[str]]) -> "Graph":
        return Graph(self._adj, labels)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self) -> int:
        return hash(self._adj)

    def __repr__(self) -> str:
        return f"Graph(n={self.vertex_count}, m={self.edge_count})"


def max_degree(g: Graph) -> int:
    return max((g.degree(v) for v in range(g.vertex_count)), default=0)


def is_triangle_free(g: Graph) -> bool:
    masks = g.masks
    for u, v in g.edges():
        if masks[u] & masks[v]:
            return False
    return True


def disjoint_union(*graphs: Graph) -> Graph:
    adj: list[list[int]] = []
    offset = 0
    for g in graphs:
        adj.extend([u + offset for u in g.neighbors(v)] for v in range(g.vertex_count))
        offset += g.vertex_count
    return Graph(adj)


def identify_vertices(g: Graph, a: int, b: int) -> Graph:
    """Merge non-adjacent vertices ``a`` and ``b`` into one vertex.

    The merged vertex takes the smaller of the two ids; every vertex above
    the larger id shifts down by one so ids stay dense.  Labels, if any,
    are joined with ``=``.
    """
    n = g.vertex_count
    if not (0 <= a < n and 0 <= b < n):
        raise GraphError(f"vertices {a}, {b} out of range")
    if a == b:
        raise GraphError("cannot identify a vertex with itself")
    if g.has_edge(a, b):
        raise GraphError(f"vertices {a} and {b} are adjacent; identifying them would create a self-loop")
    keep, drop = min(a, b), max(a, b)

    def relabel(v: int) -> int:
        if v == drop:
            return keep
        return v - 1 if v > drop else v

    adj: list[set[int]] = [set() for _ in range(n - 1)]
    for u, v in g.edges():
        adj[relabel(u)].add(relabel(v))
        adj[relabel(v)].add(relabel(u))
    labels = None
    if g.labels is not None:
        labels = [lab for v, lab in enumerate(g.labels) if v != drop]
        labels[keep] = f"{g.labels[keep]}={g.labels[drop]}"
    return Graph(adj, labels)


def append_disconnected_star(g: Graph, leaf_count: int) -> Graph:
    """Add a fresh star with ``leaf_count`` leaves, unconnected to ``g``."""
    if leaf_count < 1:
        raise GraphError("a star needs at least one leaf")
    n = g.vertex_count
    adj = [list(g.neighbors(v)) for v in range(n)]
    hub = n
    adj.append(list(range(n + 1, n + 1 + leaf_count)))
    adj.extend([hub] for _ in range(leaf_count))
    labels = None
    if g.labels is not None:
        labels = list(g.labels) + ["star_hub"] + [f"star_leaf_{k}" for k in range(1, leaf_count + 1)]
    return Graph(adj, labels)


def gen_triangle_free_cubic(n: int, seed: int) -> Graph:
    """Random triangle-free graph with maximum degree at most 3.

    Candidate pairs are visited in a seeded random order and kept when
    both endpoints still have spare degree and share no neighbour.  The
    result is maximal under those two constraints, not uniform.
    """
    if n < 1:
        raise GraphError("n must be positive")
    rng = random.Random(seed)
    pairs = list(combinations(range(n), 2))
    rng.shuffle(pairs)
    masks = [0] * n
    deg = [0] * n
    edges = []
    for u, v in pairs:
        if deg[u] >= 3 or deg[v] >= 3 or masks[u] & masks[v]:
            continue
        masks[u] |= 1 << v
        masks[v] |= 1 << u
        deg[u] += 1
        deg[v] += 1
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def gen_bounded_degree(n: int, dmax: int, seed: int, p: float = 0.5) -> Graph:
    """Random graph with maximum degree at most ``dmax``.

    Each pair, in a seeded random order, is accepted with probability ``p``
    as long as neither endpoint is saturated.  ``p=1`` gives a graph that
    is maximal for the degree bound.
    """
    if n < 0:
        raise GraphError("n must be non-negative")
    if dmax < 0:
        raise GraphError("dmax must be non-negative")
    rng = random.Random(seed)
    pairs = list(combinations(range(n), 2))
    rng.shuffle(pairs)
    deg = [0] * n
    edges = []
    for u, v in pairs:
        if rng.random() >= p:
            continue
        if deg[u] >= dmax or deg[v] >= dmax:
            continue
        deg[u] += 1
        deg[v] += 1
        edges.append((u, v))
    return Graph.from_edges(n, edges)
