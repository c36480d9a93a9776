"""K_r enumeration, K_r intersection graphs and claw detection.

A clique is a sorted tuple of vertex ids.  Two cliques are adjacent in the
vertex-intersection graph when they share a vertex, and in the
edge-intersection graph when they share at least two vertices (an edge).
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Literal, Optional, Union

from .graph import Graph

Clique = tuple[int, ...]
Mode = Literal["vertex", "edge"]
MODES = ("vertex", "edge")

# minimum shared vertices for two cliques to conflict
_OVERLAP = {"vertex": 1, "edge": 2}


def check_mode(mode: str) -> None:
    if mode not in _OVERLAP:
        raise ValueError(f"mode must be 'vertex' or 'edge', not {mode!r}")


def conflict_threshold(mode: str) -> int:
    check_mode(mode)
    return _OVERLAP[mode]


def _bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def enumerate_krs(g: Graph, r: int) -> list[Clique]:
    """All r-cliques of ``g`` in lexicographic order.

    Each clique is grown from its smallest vertex using only higher-indexed
    common neighbours, so every clique is produced exactly once.
    """
    if r < 2:
        raise ValueError(f"r must be at least 2, got {r}")
    masks = g.masks
    out: list[Clique] = []

    def extend(prefix: list[int], cand: int) -> None:
        if len(prefix) == r:
            out.append(tuple(prefix))
            return
        need = r - len(prefix)
        for v in _bits(cand):
            rest = cand & masks[v] & ~((2 << v) - 1)
            if rest.bit_count() + 1 < need:
                continue
            prefix.append(v)
            extend(prefix, rest)
            prefix.pop()

    for v in range(g.vertex_count):
        higher = masks[v] & ~((2 << v) - 1)
        if higher.bit_count() >= r - 1:
            extend([v], higher)
    return out


def pairwise_overlap(a: Clique, b: Clique) -> int:
    """Number of vertices shared by two cliques."""
    return len(set(a).intersection(b))


def vertex_mask(c: Clique) -> int:
    return sum(1 << v for v in c)


@dataclass(frozen=True)
class IntersectionGraph:
    """K_r intersection graph; ``masks[i]`` is node i's neighbour bitmask."""

    nodes: tuple[Clique, ...]
    mode: str
    masks: tuple[int, ...] = field(repr=False)

    def __len__(self) -> int:
        return len(self.nodes)

    @cached_property
    def edges(self) -> frozenset[tuple[int, int]]:
        return frozenset((i, j) for i, m in enumerate(self.masks) for j in _bits(m) if i < j)

    def neighbors(self, i: int) -> list[int]:
        return list(_bits(self.masks[i]))

    def as_graph(self) -> Graph:
        return Graph([self.neighbors(i) for i in range(len(self.nodes))])


def conflict_masks(cliques: Iterable[Clique], mode: str) -> list[int]:
    """Bitmask adjacency of the intersection graph over ``cliques``.

    Uses an inverted index from vertices (vertex mode) or vertex pairs
    (edge mode) to the cliques containing them.
    """
    cliques = list(cliques)
    index: dict = defaultdict(list)
    if conflict_threshold(mode) == 1:
        for i, c in enumerate(cliques):
            for v in c:
                index[v].append(i)
    else:
        for i, c in enumerate(cliques):
            for e in combinations(c, 2):
                index[e].append(i)
    masks = [0] * len(cliques)
    for members in index.values():
        if len(members) < 2:
            continue
        group = sum(1 << i for i in members)
        for i in members:
            masks[i] |= group & ~(1 << i)
    return masks


def build_intersection_graph(g: Graph, r: int, mode: str) -> IntersectionGraph:
    check_mode(mode)
    nodes = tuple(enumerate_krs(g, r))
    return intersection_graph_of(nodes, mode)


def intersection_graph_of(cliques: Iterable[Clique], mode: str) -> IntersectionGraph:
    nodes = tuple(cliques)
    return IntersectionGraph(nodes, mode, tuple(conflict_masks(nodes, mode)))


def find_claw(h: Union[IntersectionGraph, Graph]) -> Optional[tuple[int, int, int, int]]:
    """Lexicographically smallest induced claw ``(center, l1, l2, l3)``.

    Leaves are reported in increasing order.  Returns ``None`` for a
    claw-free graph.
    """
    masks = h.masks
    for c, nbrs in enumerate(masks):
        if nbrs.bit_count() < 3:
            continue
        rest1 = nbrs
        while rest1:
            low1 = rest1 & -rest1
            rest1 ^= low1
            l1 = low1.bit_length() - 1
            # later neighbours of c that are not adjacent to l1
            cand1 = rest1 & ~masks[l1]
            while cand1:
                low2 = cand1 & -cand1
                cand1 ^= low2
                cand2 = cand1 & ~masks[low2.bit_length() - 1]
                if cand2:
                    l3 = (cand2 & -cand2).bit_length() - 1
                    return (c, l1, low2.bit_length() - 1, l3)
    return None


def format_cliques(cliques: Iterable[Clique]) -> str:
    """Record-per-line text, ``k v1 ... vr`` with 1-based vertices."""
    return "".join("k " + " ".join(str(v + 1) for v in c) + "\n" for c in cliques)


def parse_cliques(text: str) -> list[Clique]:
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        parts = line.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] != "k":
            raise ValueError(f"line {lineno}: expected a 'k' record, got {parts[0]!r}")
        try:
            verts = [int(x) - 1 for x in parts[1:]]
        except ValueError:
            raise ValueError(f"line {lineno}: non-integer vertex") from None
        if any(v < 0 for v in verts) or len(set(verts)) != len(verts):
            raise ValueError(f"line {lineno}: vertices must be distinct and 1-based")
        out.append(tuple(sorted(verts)))
    return out
