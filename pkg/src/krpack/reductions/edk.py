"""MAX-2SAT(3) -> edge-disjoint K_4 / K_5 packing.

Every variable x_i gets a ring-shaped gadget R_i whose K_r's alternate
between an "even" and an "odd" family; picking one whole family encodes
x_i = true (even) or false (odd).  Every clause gets a small gadget with
one K_r per literal (the clause cliques P); those share an edge, so at most
one of them can be packed.  A clause clique is glued onto its variable's
gadget along an edge that lies in an odd clique for a positive literal and
in an even clique for a negative one, so it only fits next to the family
that makes the literal true.

Optimum packing size = (per-gadget family size) + (MaxSAT optimum), with a
family size of 3*m_i cliques for K_4 and 2*m_i for K_5.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from typing import NamedTuple, Optional, Sequence

from ..cliques import Clique, pairwise_overlap
from ..graph import Graph
from ..packing import InvalidPacking, Packing
from ..sat import Formula
from .builder import GadgetBuilder


class ClauseClique(NamedTuple):
    clause: int
    position: int
    variable: int
    positive: bool
    occurrence: int  # 1-based j: which occurrence of the variable this is
    clique: Clique


@dataclass(frozen=True)
class EdkReduction:
    formula: Formula
    r: int
    target: Graph
    even: tuple[tuple[Clique, ...], ...]
    odd: tuple[tuple[Clique, ...], ...]
    clause_cliques: tuple[ClauseClique, ...]
    vertex_of_label: dict[str, int] = field(repr=False, compare=False, default_factory=dict)

    @property
    def kind(self) -> str:
        return f"edk{self.r}"

    @property
    def family_size(self) -> int:
        """Cliques per occurrence in one parity family: 3 for K_4, 2 for K_5."""
        return 3 if self.r == 4 else 2

    @property
    def baseline(self) -> int:
        """Size of the variable-gadget part of any canonical packing."""
        return self.family_size * sum(self.formula.occurrences)

    def gadget_cliques(self, i: int) -> tuple[Clique, ...]:
        """R_i's cliques in ring order, alternating between the two families."""
        first, second = (self.even[i], self.odd[i]) if self.r == 4 else (self.odd[i], self.even[i])
        ring = []
        for x, y in zip(first, second):
            ring.extend((x, y))
        return tuple(ring)

    def clause_cliques_of(self, i: int) -> list[ClauseClique]:
        return [cc for cc in self.clause_cliques if cc.variable == i]

    def all_cliques(self) -> list[Clique]:
        out = [c for i in range(self.formula.variable_count) for c in self.gadget_cliques(i)]
        out.extend(cc.clique for cc in self.clause_cliques)
        return out


def _edk4_variable(b: GadgetBuilder, i: int, m: int):
    lab = lambda x, j: f"{x}_{i + 1}^{j}"  # noqa: E731
    even, odd = [], []
    for j in range(1, m + 1):
        nxt = j % m + 1
        a, bb, c, d, e, h, u, v, w, y = (lab(x, j) for x in "abcdehuvwy")
        even.append(b.clique(a, bb, u, v))
        odd.append(b.clique(a, bb, c, v))
        even.append(b.clique(c, v, d, w))
        odd.append(b.clique(d, w, e, y))
        even.append(b.clique(d, e, h, y))
        odd.append(b.clique(h, lab("a", nxt), y, lab("u", nxt)))
    return even, odd


def _edk5_variable(b: GadgetBuilder, i: int, m: int):
    lab = lambda x, j: f"{x}_{i + 1}^{j}"  # noqa: E731
    even, odd = [], []
    for j in range(1, m + 1):
        nxt = j % m + 1
        a, bb, c, d, e, h, u, v = (lab(x, j) for x in "abcdehuv")
        # ring order: odd, even, odd, even so that even[k] sits between odd[k] and odd[k+1]
        odd.append(b.clique(a, bb, e, u, v))
        even.append(b.clique(bb, c, e, h, v))
        odd.append(b.clique(c, d, h, v, lab("u", nxt)))
        even.append(b.clique(d, lab("a", nxt), h, lab("e", nxt), lab("u", nxt)))
    return even, odd


def _edk4_clause(b: GadgetBuilder, k: int, width: int):
    s1, t1, s2, t2, w = (f"s_{k + 1}^1", f"t_{k + 1}^1", f"s_{k + 1}^2", f"t_{k + 1}^2", f"w_{k + 1}")
    ps = [b.clique(s1, t1, s2, w)]
    if width == 2:
        ps.append(b.clique(s1, s2, t2, w))
    return ps, [(s1, t1), (s2, t2)]


def _edk5_clause(b: GadgetBuilder, k: int, width: int):
    s1, t1, s2, t2 = (f"s_{k + 1}^1", f"t_{k + 1}^1", f"s_{k + 1}^2", f"t_{k + 1}^2")
    w1, w2, w3, w4 = (f"w_{k + 1}^{q}" for q in range(1, 5))
    ps = [b.clique(s1, t1, w1, w2, w3)]
    if width == 2:
        ps.append(b.clique(s2, t2, w2, w3, w4))
    return ps, [(s1, t1), (s2, t2)]


# which gadget pair (s, t) is glued to, by clique size and literal sign
_ATTACH = {
    (4, True): ("b", "c"),
    (4, False): ("e", "h"),
    (5, True): ("a", "b"),
    (5, False): ("b", "c"),
}


def _reduce(phi: Formula, r: int) -> EdkReduction:
    phi.require_reduction_ready()
    variable_gadget = _edk4_variable if r == 4 else _edk5_variable
    clause_gadget = _edk4_clause if r == 4 else _edk5_clause
    b = GadgetBuilder()
    occ = phi.occurrence_list()
    m = phi.occurrences
    gadgets = [variable_gadget(b, i, m[i]) for i in range(phi.variable_count)]
    clause_parts = []
    for k, clause in enumerate(phi.clauses):
        ps, pairs = clause_gadget(b, k, len(clause))
        for pos, lit in enumerate(clause):
            j = occ[lit.variable].index((k, pos)) + 1
            x, y = _ATTACH[(r, lit.positive)]
            s, t = pairs[pos]
            b.identify(f"{x}_{lit.variable + 1}^{j}", s)
            b.identify(f"{y}_{lit.variable + 1}^{j}", t)
            clause_parts.append((k, pos, lit.variable, lit.positive, j, ps[pos]))
    target, vid = b.build()

    def ids(labels) -> Clique:
        return tuple(sorted(vid[x] for x in labels))

    even = tuple(tuple(ids(c) for c in ev) for ev, _ in gadgets)
    odd = tuple(tuple(ids(c) for c in od) for _, od in gadgets)
    clause_cliques = tuple(ClauseClique(k, pos, v, positive, j, ids(p)) for k, pos, v, positive, j, p in clause_parts)
    return EdkReduction(phi, r, target, even, odd, clause_cliques, vid)


def reduce_max2sat3_to_edk4(phi: Formula) -> EdkReduction:
    return _reduce(phi, 4)


def reduce_max2sat3_to_edk5(phi: Formula) -> EdkReduction:
    return _reduce(phi, 5)


def edk_assignment_to_packing(red: EdkReduction, assignment: Sequence[bool]) -> Packing:
    """Whole even/odd family per variable, plus one clause clique per satisfied clause."""
    phi = red.formula
    if len(assignment) != phi.variable_count:
        raise ValueError(f"assignment covers {len(assignment)} of {phi.variable_count} variables")
    chosen: list[Clique] = []
    for i, value in enumerate(assignment):
        chosen.extend(red.even[i] if value else red.odd[i])
    by_clause = defaultdict(list)
    for cc in red.clause_cliques:
        by_clause[cc.clause].append(cc)
    for k in range(len(phi.clauses)):
        for cc in sorted(by_clause[k], key=lambda cc: cc.position):
            if assignment[cc.variable] == cc.positive:
                chosen.append(cc.clique)
                break
    return Packing(tuple(chosen), "edge", red.r)


def _require_edge_disjoint(red: EdkReduction, t: Packing) -> None:
    if t.r != red.r:
        raise InvalidPacking(f"packing is of K_{t.r}s, reduction targets K_{red.r}s")
    g = red.target
    for c in t.cliques:
        if len(c) != red.r or any(not g.has_edge(u, v) for u, v in combinations(c, 2)):
            raise InvalidPacking(f"{c} is not a K_{red.r} of the target")
    by_vertex = defaultdict(list)
    for c in t.cliques:
        for v in c:
            by_vertex[v].append(c)
    for group in by_vertex.values():
        for a, b in combinations(group, 2):
            if pairwise_overlap(a, b) >= 2:
                raise InvalidPacking(f"{a} and {b} share an edge")


def is_canonical(red: EdkReduction, t: Packing) -> bool:
    have = set(t.cliques)
    return all(
        set(red.even[i]) <= have or set(red.odd[i]) <= have for i in range(red.formula.variable_count)
    )


def canonicalize_packing(red: EdkReduction, t: Packing, trace: Optional[list] = None) -> Packing:
    """Rewrite ``t`` so every variable gadget holds a whole even or odd family.

    For each offending gadget, the sign whose clause cliques are in the
    minority (at most one of them, since a variable has at most three
    occurrences) loses them, and the family compatible with the majority
    sign is installed in full.  The size never drops.
    """
    _require_edge_disjoint(red, t)
    have = set(t.cliques)
    for i in range(red.formula.variable_count):
        even, odd = set(red.even[i]), set(red.odd[i])
        if even <= have or odd <= have:
            continue
        pos = [cc.clique for cc in red.clause_cliques_of(i) if cc.positive and cc.clique in have]
        neg = [cc.clique for cc in red.clause_cliques_of(i) if not cc.positive and cc.clique in have]
        if len(pos) != len(neg):
            to_true = len(neg) < len(pos)
        else:
            to_true = len(even & have) >= len(odd & have)
        drop = neg if to_true else pos
        assert len(drop) <= 1, "a variable with at most 3 occurrences has a minority sign of size <= 1"
        keep, lose = (even, odd) if to_true else (odd, even)
        have -= set(drop)
        have -= lose
        have |= keep
        if trace is not None:
            trace.append({"variable": i, "value": to_true, "dropped_clause_cliques": len(drop)})
    return Packing(tuple(have), "edge", red.r)


def edk_packing_to_assignment(red: EdkReduction, t: Packing) -> list[bool]:
    canon = canonicalize_packing(red, t)
    have = set(canon.cliques)
    return [set(red.even[i]) <= have for i in range(red.formula.variable_count)]
