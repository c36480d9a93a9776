"""Exact maximum independent set by branch and bound over bitmasks."""

from __future__ import annotations

from typing import Sequence


def _clique_cover_size(cand: int, masks: Sequence[int]) -> int:
    # Greedy partition of ``cand`` into cliques; an independent set takes at
    # most one vertex per part, so the part count bounds it from above.
    parts = 0
    while cand:
        low = cand & -cand
        v = low.bit_length() - 1
        cand ^= low
        parts += 1
        grow = cand & masks[v]
        while grow:
            low = grow & -grow
            u = low.bit_length() - 1
            cand ^= low
            grow &= masks[u]
    return parts


def max_independent_set(masks: Sequence[int]) -> tuple[list[int], dict]:
    """Return the lexicographically least maximum independent set.

    ``masks[v]`` is the neighbourhood bitmask of node ``v``.  The search
    branches on the lowest-indexed candidate, trying "include" before
    "exclude", and only accepts strictly larger incumbents, so the first
    maximum reached is the lexicographically least one.

    The second return value holds search counters (``nodes``, ``pruned``).
    """
    n = len(masks)
    best: list[int] = []
    stats = {"nodes": 0, "pruned": 0}
    # explicit stack: depth can reach the number of nodes
    stack: list[tuple[tuple[int, ...], int]] = [((), (1 << n) - 1)]
    while stack:
        chosen, cand = stack.pop()
        stats["nodes"] += 1
        if not cand:
            if len(chosen) > len(best):
                best = list(chosen)
            continue
        if len(chosen) + cand.bit_count() <= len(best):
            stats["pruned"] += 1
            continue
        if len(chosen) + _clique_cover_size(cand, masks) <= len(best):
            stats["pruned"] += 1
            continue
        low = cand & -cand
        v = low.bit_length() - 1
        rest = cand ^ low
        stack.append((chosen, rest))
        stack.append((chosen + (v,), rest & ~masks[v]))
    return best, stats


def brute_force_mis_size(masks: Sequence[int]) -> int:
    """Plain exhaustive search, kept free of bounds; for cross-checking."""
    n = len(masks)

    def rec(v: int, cand: int) -> int:
        if v == n:
            return 0
        if not (cand >> v) & 1:
            return rec(v + 1, cand)
        skip = rec(v + 1, cand)
        take = 1 + rec(v + 1, cand & ~masks[v])
        return max(skip, take)

    return rec(0, (1 << n) - 1)
