"""Empirical L-reduction check for the three constructions.

For a source instance x with reduction f and back-map g, an L-reduction
with constants (alpha, beta) needs

    opt_target(f(x)) <= alpha * opt_source(x)
    opt_source(x) - m_source(g(y)) <= beta * (opt_target(f(x)) - |y|)

for every feasible target solution y.  Both optima come from exact
searches, and y ranges over a sample of feasible packings.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from ..cliques import Clique, conflict_masks, enumerate_krs
from ..graph import Graph
from ..mis import brute_force_mis_size
from ..packing import DEFAULT_MAX_CLIQUES, InstanceTooLarge, Packing, exact_max_packing
from ..sat import Formula, brute_force_maxsat, count_satisfied
from .edk import (
    EdkReduction,
    edk_assignment_to_packing,
    edk_packing_to_assignment,
    reduce_max2sat3_to_edk4,
    reduce_max2sat3_to_edk5,
)
from .vdkr import reduce_mis_to_vdkr, vdkr_map_packing_to_is

CONSTANTS = {"vdkr": (1, 1), "edk4": (13, 1), "edk5": (9, 1)}
MAX_SOURCE_VERTICES = 40


def sample_packings(
    cliques: Sequence[Clique], masks: Sequence[int], rng: random.Random, count: int
) -> list[list[int]]:
    """Random feasible packings as clique-index lists.

    Half are random-order maximal packings, half are random subsets of one.
    """
    out = []
    order = list(range(len(cliques)))
    for k in range(count):
        rng.shuffle(order)
        taken, blocked = [], 0
        for i in order:
            if not (blocked >> i) & 1:
                taken.append(i)
                blocked |= masks[i] | (1 << i)
        if k % 2:
            keep = rng.random()
            taken = [i for i in taken if rng.random() < keep]
        out.append(sorted(taken))
    return out


@dataclass
class LReductionReport:
    kind: str
    alpha: int
    beta: int
    samples: int = 0
    solutions_checked: int = 0
    violations: list[dict] = field(default_factory=list)
    max_alpha_ratio: Optional[Fraction] = None
    max_beta_ratio: Optional[Fraction] = None
    # opt_target - offset - opt_source per sample; offset is 0 for vdkr
    optimum_gaps: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        def frac(x):
            return None if x is None else str(x)

        return {
            "kind": self.kind,
            "alpha": self.alpha,
            "beta": self.beta,
            "samples": self.samples,
            "solutions_checked": self.solutions_checked,
            "violations": self.violations,
            "max_alpha_ratio": frac(self.max_alpha_ratio),
            "max_beta_ratio": frac(self.max_beta_ratio),
            "optimum_gaps": sorted(set(self.optimum_gaps)),
        }


def _mis_size(g: Graph) -> int:
    # plain exhaustive search, deliberately not the bounded solver used on the target side
    if g.vertex_count > MAX_SOURCE_VERTICES:
        raise InstanceTooLarge(f"{g.vertex_count} source vertices exceed the guard of {MAX_SOURCE_VERTICES}")
    return brute_force_mis_size(g.masks)


def _record(report: LReductionReport, sample: int, opt_s: int, opt_t: int, offset: int) -> None:
    report.samples += 1
    report.optimum_gaps.append(opt_t - offset - opt_s)
    if opt_t > report.alpha * opt_s:
        report.violations.append({"sample": sample, "check": "alpha", "opt_source": opt_s, "opt_target": opt_t})
    if opt_s > 0:
        ratio = Fraction(opt_t, opt_s)
        if report.max_alpha_ratio is None or ratio > report.max_alpha_ratio:
            report.max_alpha_ratio = ratio


def _check_beta(report: LReductionReport, sample: int, opt_s: int, opt_t: int, m_s: int, m_t: int) -> None:
    report.solutions_checked += 1
    gap_s, gap_t = opt_s - m_s, opt_t - m_t
    if gap_s > report.beta * gap_t:
        report.violations.append(
            {"sample": sample, "check": "beta", "source_gap": gap_s, "target_gap": gap_t, "target_size": m_t}
        )
    if gap_t > 0:
        ratio = Fraction(gap_s, gap_t)
        if report.max_beta_ratio is None or ratio > report.max_beta_ratio:
            report.max_beta_ratio = ratio


def verify_l_reduction(
    kind: str,
    samples: Iterable[Union[Graph, Formula, tuple]],
    r: Optional[int] = None,
    solutions_per_sample: int = 20,
    seed: int = 0,
    max_cliques: int = DEFAULT_MAX_CLIQUES,
) -> LReductionReport:
    """Check the alpha/beta inequalities on every sample.

    ``kind`` is ``vdkr``, ``edk4`` or ``edk5``.  vdkr samples are source
    graphs, or ``(graph, r)`` pairs; ``r`` supplies the default.  edk
    samples are reduction-ready formulas.
    """
    if kind not in CONSTANTS:
        raise ValueError(f"unknown reduction kind {kind!r}")
    alpha, beta = CONSTANTS[kind]
    report = LReductionReport(kind, alpha, beta)
    rng = random.Random(seed)
    for idx, sample in enumerate(samples):
        if kind == "vdkr":
            g, rr = sample if isinstance(sample, tuple) else (sample, r)
            if rr is None:
                raise ValueError("vdkr verification needs r")
            red = reduce_mis_to_vdkr(g, rr)
            opt_s = _mis_size(g)
            opt_pack = exact_max_packing(red.target, rr, "vertex", max_cliques=max_cliques)
            opt_t = len(opt_pack)
            _record(report, idx, opt_s, opt_t, 0)
            cliques = list(red.clique_of_vertex)
            masks = conflict_masks(cliques, "vertex")
            packings = [opt_pack, Packing((), "vertex", rr)] + [
                Packing(tuple(cliques[i] for i in s), "vertex", rr)
                for s in sample_packings(cliques, masks, rng, solutions_per_sample)
            ]
            for y in packings:
                s_set = vdkr_map_packing_to_is(red, y)
                if any(g.has_edge(u, v) for u in s_set for v in s_set if u < v):
                    report.violations.append({"sample": idx, "check": "feasibility", "detail": "not independent"})
                _check_beta(report, idx, opt_s, opt_t, len(s_set), len(y))
        else:
            phi = sample
            red = reduce_max2sat3_to_edk4(phi) if kind == "edk4" else reduce_max2sat3_to_edk5(phi)
            opt_s, _ = brute_force_maxsat(phi)
            opt_pack = exact_max_packing(red.target, red.r, "edge", max_cliques=max_cliques)
            opt_t = len(opt_pack)
            _record(report, idx, opt_s, opt_t, red.baseline)
            for y in _edk_solutions(red, opt_pack, rng, solutions_per_sample):
                f = edk_packing_to_assignment(red, y)
                _check_beta(report, idx, opt_s, opt_t, count_satisfied(phi, f), len(y))
    return report


def _edk_solutions(red: EdkReduction, opt_pack: Packing, rng: random.Random, count: int) -> list[Packing]:
    cliques = enumerate_krs(red.target, red.r)
    masks = conflict_masks(cliques, "edge")
    out = [opt_pack, Packing((), "edge", red.r)]
    n = red.formula.variable_count
    for _ in range(max(1, count // 4)):
        f = [rng.random() < 0.5 for _ in range(n)]
        out.append(edk_assignment_to_packing(red, f))
    for s in sample_packings(cliques, masks, rng, count):
        out.append(Packing(tuple(cliques[i] for i in s), "edge", red.r))
    return out
