"""Randomised property suites behind ``krpack verify``.

Each suite draws graphs from :func:`gen_bounded_degree` under a degree cap
for which a structural property is guaranteed, checks the property, and
returns a report listing any violating instance.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .cliques import build_intersection_graph, find_claw, pairwise_overlap
from .graph import gen_bounded_degree, gen_triangle_free_cubic
from .packing import check_disjointness_coincidence, exact_max_packing, greedy_maximal_packing
from .reductions.lreduction import verify_l_reduction
from .sat import random_reduction_ready_formula, two_variable_formulas

SUITES = ("claw", "overlap", "coincidence", "maximal", "lreduction")


class UsageError(ValueError):
    """Suite parameters outside the range where the property is claimed."""


def trial_graph(trial_seed: str, r: int, n_max: int, dmax: int):
    rng = random.Random(trial_seed)
    n = rng.randint(min(r, n_max), n_max)
    p = rng.uniform(0.2, 1.0)
    return gen_bounded_degree(n, dmax, rng.randrange(2**32), p)


def _report(suite: str, trials: int, violations: list, **extra) -> dict:
    out = {"suite": suite, "trials": trials, "violations": violations, "ok": not violations}
    out.update(extra)
    return out


def _below(delta: int, bound: Fraction) -> bool:
    return Fraction(delta) < bound


def run_claw(r: int, dmax: int, trials: int, seed: int, n: int = 12) -> dict:
    vertex_mode = _below(dmax, Fraction(5 * r, 3) - 1)
    edge_mode = r in (4, 5) and dmax <= 2 * r - 2
    if not (vertex_mode or edge_mode):
        raise UsageError(f"no claw-freeness guarantee for r={r}, dmax={dmax}")
    violations = []
    for t in range(trials):
        g = trial_graph(f"{seed}:{t}", r, n, dmax)
        for mode, active in (("vertex", vertex_mode), ("edge", edge_mode)):
            if not active:
                continue
            claw = find_claw(build_intersection_graph(g, r, mode))
            if claw is not None:
                violations.append({"trial": t, "mode": mode, "claw": list(claw), "edges": g.edges()})
    return _report("claw", trials, violations, modes=[m for m, a in (("vertex", vertex_mode), ("edge", edge_mode)) if a])


def run_overlap(r: int, dmax: int, trials: int, seed: int, n: int = 12) -> dict:
    if not _below(dmax, Fraction(5 * r, 3) - 1):
        raise UsageError(f"overlap bound needs dmax < 5r/3 - 1 = {Fraction(5 * r, 3) - 1}")
    violations = []
    tightest: Optional[int] = None
    for t in range(trials):
        g = trial_graph(f"{seed}:{t}", r, n, dmax)
        h = build_intersection_graph(g, r, "vertex")
        for i, j in sorted(h.edges):
            k = pairwise_overlap(h.nodes[i], h.nodes[j])
            tightest = k if tightest is None else min(tightest, k)
            if 3 * k <= r:
                violations.append({"trial": t, "cliques": [list(h.nodes[i]), list(h.nodes[j])], "overlap": k})
    return _report("overlap", trials, violations, smallest_overlap=tightest)


def run_coincidence(r: int, dmax: int, trials: int, seed: int, n: int = 12) -> dict:
    if dmax >= 2 * r - 2:
        raise UsageError(f"coincidence needs dmax < 2r - 2 = {2 * r - 2}")
    violations = []
    for t in range(trials):
        g = trial_graph(f"{seed}:{t}", r, n, dmax)
        if not check_disjointness_coincidence(g, r):
            violations.append({"trial": t, "check": "single-vertex overlap"})
        ev, ee = len(exact_max_packing(g, r, "vertex")), len(exact_max_packing(g, r, "edge"))
        if ev != ee:
            violations.append({"trial": t, "check": "optimum", "vertex": ev, "edge": ee})
    return _report("coincidence", trials, violations)


def run_maximal(r: int, dmax: int, trials: int, seed: int, n: int = 12) -> dict:
    if not _below(dmax, Fraction(3 * r, 2) - 1):
        raise UsageError(f"maximal = maximum needs dmax < 3r/2 - 1 = {Fraction(3 * r, 2) - 1}")
    violations = []
    for t in range(trials):
        g = trial_graph(f"{seed}:{t}", r, n, dmax)
        for mode in ("vertex", "edge"):
            greedy, exact = len(greedy_maximal_packing(g, r, mode)), len(exact_max_packing(g, r, mode))
            if greedy != exact:
                violations.append({"trial": t, "mode": mode, "greedy": greedy, "exact": exact})
    return _report("maximal", trials, violations)


def run_lreduction(
    kind: str, trials: int, seed: int, r: Optional[int] = None, exhaustive_2var: bool = False,
    variables: int = 3, n: int = 10,
) -> dict:
    if kind == "vdkr":
        if exhaustive_2var:
            raise UsageError("--exhaustive-2var applies to edk4/edk5 only")
        rs = [r] if r is not None else [3, 4, 5]
        samples = []
        for t in range(trials):
            rng = random.Random(f"{seed}:{t}")
            samples.append((gen_triangle_free_cubic(rng.randint(1, n), rng.randrange(2**32)), rs[t % len(rs)]))
    else:
        samples = two_variable_formulas() if exhaustive_2var else []
        samples += [random_reduction_ready_formula(variables, seed * 100_003 + t) for t in range(trials)]
    rep = verify_l_reduction(kind, samples, seed=seed)
    data = rep.to_dict()
    return _report("lreduction", data["samples"], data["violations"], **{k: v for k, v in data.items() if k != "violations"})
