"""Independent set on triangle-free max-degree-3 graphs -> vertex-disjoint K_r packing.

Each source vertex becomes an r-clique; for each source edge the two
cliques are glued along floor(r/3) vertices.  The glued graph has exactly
the source cliques as its K_r's, so packings and independent sets
correspond one to one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from ..cliques import Clique, enumerate_krs
from ..graph import Graph, is_triangle_free, max_degree
from ..packing import Packing
from .builder import GadgetBuilder


class ReductionError(ValueError):
    pass


@dataclass(frozen=True)
class VdkrReduction:
    source: Graph
    r: int
    target: Graph
    clique_of_vertex: tuple[Clique, ...]
    shared_sets: dict[tuple[int, int], tuple[int, ...]]
    free_sets: tuple[tuple[int, ...], ...]

    kind = "vdkr"

    def vertex_of_clique(self) -> dict[Clique, int]:
        return {c: i for i, c in enumerate(self.clique_of_vertex)}


def reduce_mis_to_vdkr(g: Graph, r: int) -> VdkrReduction:
    if r < 3:
        raise ReductionError(f"r must be at least 3, got {r}")
    if max_degree(g) > 3:
        v = next(v for v in range(g.vertex_count) if g.degree(v) > 3)
        raise ReductionError(f"source vertex {v + 1} has degree {g.degree(v)}; at most 3 allowed")
    if not is_triangle_free(g):
        tri = enumerate_krs(g, 3)[0]
        raise ReductionError("source graph contains triangle " + " ".join(str(v + 1) for v in tri))
    share = r // 3
    b = GadgetBuilder()
    slots = [[b.vertex(f"u_{i + 1}^{j}") for j in range(1, r + 1)] for i in range(g.vertex_count)]
    for row in slots:
        b.clique(*row)
    next_free = [0] * g.vertex_count
    merged: dict[tuple[int, int], list[str]] = {}
    for i, j in g.edges():
        a_slots = slots[i][next_free[i]:next_free[i] + share]
        b_slots = slots[j][next_free[j]:next_free[j] + share]
        next_free[i] += share
        next_free[j] += share
        for x, y in zip(a_slots, b_slots):
            b.identify(x, y)
        merged[(i, j)] = a_slots
    target, vid = b.build()
    cliques = tuple(tuple(sorted(vid[lab] for lab in row)) for row in slots)
    shared = {e: tuple(sorted(vid[lab] for lab in labs)) for e, labs in merged.items()}
    free = tuple(tuple(sorted(vid[lab] for lab in row[next_free[i]:])) for i, row in enumerate(slots))
    return VdkrReduction(g, r, target, cliques, shared, free)


def vdkr_map_is_to_packing(red: VdkrReduction, s: Iterable[int]) -> Packing:
    s = sorted(set(s))
    for v in s:
        if not 0 <= v < red.source.vertex_count:
            raise ReductionError(f"vertex {v} is not in the source graph")
    for k, u in enumerate(s):
        for v in s[k + 1:]:
            if red.source.has_edge(u, v):
                raise ReductionError(f"vertices {u} and {v} are adjacent; not an independent set")
    return Packing(tuple(red.clique_of_vertex[v] for v in s), "vertex", red.r)


def vdkr_map_packing_to_is(red: VdkrReduction, t: Packing) -> set[int]:
    lookup = red.vertex_of_clique()
    out = set()
    for c in t.cliques:
        if c not in lookup:
            raise ReductionError(f"clique {c} is not one of the reduction's cliques; target data is corrupt")
        out.add(lookup[c])
    if len(out) != len(t.cliques):
        raise ReductionError("packing repeats a clique")
    for u in out:
        for v in out:
            if u < v and red.source.has_edge(u, v):
                raise ReductionError(f"cliques of source vertices {u} and {v} overlap; packing is not vertex-disjoint")
    return out
