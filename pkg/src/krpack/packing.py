"""Vertex- and edge-disjoint K_r packing: solvers and regime classifier."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional

from .cliques import (
    Clique,
    check_mode,
    conflict_masks,
    conflict_threshold,
    enumerate_krs,
    pairwise_overlap,
)
from .graph import Graph, max_degree
from .mis import max_independent_set

DEFAULT_MAX_CLIQUES = 10_000


class InstanceTooLarge(RuntimeError):
    """The exact search guard was exceeded."""


class InvalidPacking(ValueError):
    pass


@dataclass(frozen=True)
class Packing:
    cliques: tuple[Clique, ...]
    mode: str
    r: int

    def __post_init__(self):
        check_mode(self.mode)
        object.__setattr__(self, "cliques", tuple(sorted(tuple(sorted(c)) for c in self.cliques)))

    def __len__(self) -> int:
        return len(self.cliques)

    @property
    def size(self) -> int:
        return len(self.cliques)

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "r": self.r,
            "cliques": [[v + 1 for v in c] for c in self.cliques],
            "size": self.size,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Packing":
        cliques = [tuple(v - 1 for v in c) for c in data["cliques"]]
        p = cls(tuple(cliques), data["mode"], int(data["r"]))
        if "size" in data and data["size"] != p.size:
            raise InvalidPacking(f"size field {data['size']} disagrees with {p.size} cliques")
        return p

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def validate_packing(g: Graph, packing: Packing) -> None:
    """Raise :class:`InvalidPacking` unless ``packing`` is feasible in ``g``."""
    limit = conflict_threshold(packing.mode)
    for c in packing.cliques:
        if len(c) != packing.r or len(set(c)) != packing.r:
            raise InvalidPacking(f"{c} is not an r-set for r={packing.r}")
        for u, v in combinations(c, 2):
            if not (0 <= u < g.vertex_count and 0 <= v < g.vertex_count) or not g.has_edge(u, v):
                raise InvalidPacking(f"{c} is not a clique of the graph")
    if len(set(packing.cliques)) != len(packing.cliques):
        raise InvalidPacking("packing repeats a clique")
    for a, b in combinations(packing.cliques, 2):
        if pairwise_overlap(a, b) >= limit:
            raise InvalidPacking(f"{a} and {b} are not {packing.mode}-disjoint")


def is_feasible(g: Graph, packing: Packing) -> bool:
    try:
        validate_packing(g, packing)
    except InvalidPacking:
        return False
    return True


def _compatible(c: Clique, chosen: Iterable[Clique], limit: int) -> bool:
    return all(pairwise_overlap(c, d) < limit for d in chosen)


def greedy_maximal_packing(g: Graph, r: int, mode: str, cliques: Optional[list[Clique]] = None) -> Packing:
    """Maximal packing by an ascending vertex scan.

    At each vertex the lexicographically smallest addable K_r through that
    vertex is taken, repeatedly, until none is left.
    """
    check_mode(mode)
    if cliques is None:
        cliques = enumerate_krs(g, r)
    limit = conflict_threshold(mode)
    through: list[list[Clique]] = [[] for _ in range(g.vertex_count)]
    for c in cliques:
        for v in c:
            through[v].append(c)
    chosen: list[Clique] = []
    # cliques sharing a vertex with the packing, per vertex
    touching: list[list[Clique]] = [[] for _ in range(g.vertex_count)]
    for v in range(g.vertex_count):
        for c in through[v]:
            nearby = {d for u in c for d in touching[u]}
            if _compatible(c, nearby, limit):
                chosen.append(c)
                for u in c:
                    touching[u].append(c)
    return Packing(tuple(chosen), mode, r)


def exact_max_packing(
    g: Graph,
    r: int,
    mode: str,
    max_cliques: int = DEFAULT_MAX_CLIQUES,
    cliques: Optional[list[Clique]] = None,
    stats: Optional[dict] = None,
) -> Packing:
    """Maximum packing via exact independent set on the intersection graph.

    Among maximum packings, the one with the lexicographically least set of
    clique indices (in enumeration order) is returned.
    """
    check_mode(mode)
    if cliques is None:
        cliques = enumerate_krs(g, r)
    if len(cliques) > max_cliques:
        raise InstanceTooLarge(f"{len(cliques)} cliques exceed the exact-search guard of {max_cliques}")
    masks = conflict_masks(cliques, mode)
    chosen, search = max_independent_set(masks)
    if stats is not None:
        stats.update(search)
        stats["cliques"] = len(cliques)
    return Packing(tuple(cliques[i] for i in chosen), mode, r)


def hurkens_schrijver_ratio(set_size: int, swap_size: int) -> Fraction:
    """Worst-case ratio guaranteed by local search on ``set_size``-sets.

    With no swaps (plain maximality) the ratio is ``set_size``; with
    swaps of one set for two it is ``(set_size + 1) / 2``.  Larger swaps
    only strengthen local optimality, so the t=1 figure is reported for
    them too.
    """
    if swap_size <= 0:
        return Fraction(set_size)
    return Fraction(set_size + 1, 2)


def packing_element_size(r: int, mode: str) -> int:
    """Size of the ground-set image of one K_r: vertices or edges."""
    return r if conflict_threshold(mode) == 1 else r * (r - 1) // 2


def find_improving_swap(
    cliques: list[Clique], masks: list[int], current: list[int], swap_size: int
) -> Optional[tuple[list[int], list[int]]]:
    """Search for ``s <= swap_size`` members to drop and ``s + 1`` to add.

    ``cliques``/``masks`` describe the full intersection graph; ``current``
    holds the indices of the packing.  Returns ``(drop, add)`` or ``None``.
    """
    in_pack = set(current)
    pos = {idx: k for k, idx in enumerate(current)}
    conflicts: dict[int, frozenset[int]] = {}
    pack_mask = sum(1 << i for i in current)
    for i in range(len(cliques)):
        if i in in_pack:
            continue
        hit = masks[i] & pack_mask
        members = []
        while hit:
            low = hit & -hit
            members.append(pos[low.bit_length() - 1])
            hit ^= low
        if len(members) <= swap_size:
            conflicts[i] = frozenset(members)
    for s in range(swap_size + 1):
        for drop in combinations(range(len(current)), s):
            drop_set = set(drop)
            cand = [i for i, cs in conflicts.items() if cs <= drop_set]
            if len(cand) < s + 1:
                continue
            add = _independent_subset(cand, masks, s + 1)
            if add is not None:
                return [current[k] for k in drop], add
    return None


def _independent_subset(cand: list[int], masks: list[int], k: int) -> Optional[list[int]]:
    def rec(start: int, picked: list[int], blocked: int) -> Optional[list[int]]:
        if len(picked) == k:
            return list(picked)
        for j in range(start, len(cand)):
            i = cand[j]
            if (blocked >> i) & 1:
                continue
            picked.append(i)
            found = rec(j + 1, picked, blocked | masks[i])
            if found is not None:
                return found
            picked.pop()
        return None

    return rec(0, [], 0)


def local_improvement_packing(
    g: Graph, r: int, mode: str, swap_size: int = 1, start: Optional[Packing] = None
) -> Packing:
    """Local search from the greedy packing using (s, s+1) swaps, s <= swap_size."""
    check_mode(mode)
    if swap_size < 0:
        raise ValueError("swap size must be non-negative")
    cliques = enumerate_krs(g, r)
    index = {c: i for i, c in enumerate(cliques)}
    masks = conflict_masks(cliques, mode)
    if start is None:
        start = greedy_maximal_packing(g, r, mode, cliques)
    current = sorted(index[c] for c in start.cliques)
    while True:
        swap = find_improving_swap(cliques, masks, current, swap_size)
        if swap is None:
            break
        drop, add = swap
        current = sorted((set(current) - set(drop)) | set(add))
    return Packing(tuple(cliques[i] for i in current), mode, r)


class RegimeTag(str, Enum):
    LINEAR_TIME = "LinearTime"
    POLY_VERTEX_CLAW_FREE = "PolyVertexClawFree"
    POLY_EDGE_CLAW_FREE = "PolyEdgeClawFree"
    APX_HARD = "ApxHard"


@dataclass(frozen=True)
class Regime:
    tag: RegimeTag
    threshold_note: str = field(default="", compare=False)

    @property
    def tractable(self) -> bool:
        return self.tag is not RegimeTag.APX_HARD


def classify_regime(r: int, delta: int, mode: str) -> Regime:
    """Complexity regime of VDK_r / EDK_r on graphs of maximum degree ``delta``."""
    check_mode(mode)
    if r < 3:
        raise ValueError(f"regimes are defined for r >= 3, got {r}")
    if delta < 0:
        raise ValueError("maximum degree must be non-negative")
    d = Fraction(delta)
    linear = Fraction(3 * r, 2) - 1
    claw_free = Fraction(5 * r, 3) - 1
    hard_from = math.ceil(Fraction(5 * r, 3)) - 1
    if d < linear:
        return Regime(RegimeTag.LINEAR_TIME, f"delta={delta} < 3r/2-1={linear}")
    if mode == "edge" and r <= 5:
        if delta <= 2 * r - 2:
            return Regime(RegimeTag.POLY_EDGE_CLAW_FREE, f"delta={delta} <= 2r-2={2 * r - 2}")
        return Regime(RegimeTag.APX_HARD, f"delta={delta} > 2r-2={2 * r - 2}")
    if d < claw_free:
        return Regime(RegimeTag.POLY_VERTEX_CLAW_FREE, f"delta={delta} < 5r/3-1={claw_free}")
    assert delta >= hard_from
    return Regime(RegimeTag.APX_HARD, f"delta={delta} >= ceil(5r/3)-1={hard_from}")


def check_disjointness_coincidence(g: Graph, r: int) -> bool:
    """True iff no two K_r's of ``g`` share exactly one vertex.

    Only meaningful as a check while max degree < 2r - 2; outside that
    bound a ValueError is raised.
    """
    delta = max_degree(g)
    if delta >= 2 * r - 2:
        raise ValueError(f"max degree {delta} is not below 2r-2={2 * r - 2}")
    through: dict[int, list[Clique]] = {}
    for c in enumerate_krs(g, r):
        for v in c:
            through.setdefault(v, []).append(c)
    for group in through.values():
        for a, b in combinations(group, 2):
            if pairwise_overlap(a, b) == 1:
                return False
    return True
