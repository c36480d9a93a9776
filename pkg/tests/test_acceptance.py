"""Acceptance gate: fourteen criteria, each printing one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``; the lines also appear in the
"acceptance criteria" section of the terminal summary.
"""

import math
import random
import time
from fractions import Fraction

import numpy as np
import pytest

from krpack import checks
from krpack.cliques import build_intersection_graph, conflict_masks, enumerate_krs, find_claw, intersection_graph_of
from krpack.graph import gen_triangle_free_cubic, max_degree
from krpack.mis import brute_force_mis_size
from krpack.packing import (
    Packing,
    RegimeTag,
    check_disjointness_coincidence,
    classify_regime,
    exact_max_packing,
    greedy_maximal_packing,
    is_feasible,
)
from krpack.reductions import (
    canonicalize_packing,
    edk_packing_to_assignment,
    is_canonical,
    reduce_max2sat3_to_edk4,
    reduce_max2sat3_to_edk5,
    reduce_mis_to_vdkr,
    sample_packings,
    verify_l_reduction,
)
from krpack.sat import (
    Formula,
    Literal,
    brute_force_maxsat,
    count_satisfied,
    greedy_half,
    preprocess_single_occurrence,
    random_reduction_ready_formula,
    two_variable_formulas,
)

from helpers import naive_maxsat, record


def _reduction_sources(count, n_max=12, seed=0):
    """Triangle-free max-degree-3 graphs with at least one edge."""
    out = []
    rng = random.Random(seed)
    while len(out) < count:
        g = gen_triangle_free_cubic(rng.randint(2, n_max), rng.randrange(2**32))
        if g.edge_count:
            out.append(g)
    return out


def _largest_below(x: Fraction) -> int:
    return math.ceil(x) - 1


def _strict_formula_family():
    return two_variable_formulas() + [random_reduction_ready_formula(3, 1000 + s) for s in range(25)]


@pytest.fixture(scope="module")
def formula_family():
    family = _strict_formula_family()
    assert all(len(c) == 2 for phi in family for c in phi.clauses)
    return family


@pytest.fixture(scope="module")
def edk_targets(formula_family):
    return {4: [reduce_max2sat3_to_edk4(phi) for phi in formula_family],
            5: [reduce_max2sat3_to_edk5(phi) for phi in formula_family]}


def test_c01_degree_threshold():
    start = time.time()
    bad = []
    sources = _reduction_sources(100, seed=1)
    for r in range(3, 11):
        want = math.ceil(Fraction(5 * r, 3)) - 1
        for k, g in enumerate(sources):
            got = max_degree(reduce_mis_to_vdkr(g, r).target)
            if got != want:
                bad.append((r, k, got, want))
    ok = record("C1 degree threshold", not bad, f"8 r-values x 100 graphs, {len(bad)} mismatches", time.time() - start, 5)
    assert ok, bad[:5]


def test_c02_clique_set():
    start = time.time()
    bad = []
    sources = _reduction_sources(100, seed=1)
    for r in range(3, 11):
        for k, g in enumerate(sources):
            red = reduce_mis_to_vdkr(g, r)
            if set(enumerate_krs(red.target, r)) != set(red.clique_of_vertex):
                bad.append((r, k))
    ok = record("C2 clique set equals U", not bad, f"800 targets, {len(bad)} mismatches", time.time() - start, 30)
    assert ok, bad[:5]


def _c3_samples():
    return [(g, r) for r in (3, 4, 5, 6) for g in _reduction_sources(50, n_max=10, seed=30 + r)]


def test_c03_strict_equality():
    start = time.time()
    bad = []
    samples = _c3_samples()
    for g, r in samples:
        mis = brute_force_mis_size(g.masks)
        opt = len(exact_max_packing(reduce_mis_to_vdkr(g, r).target, r, "vertex"))
        if mis != opt:
            bad.append((r, g.edges(), mis, opt))
    ok = record("C3 strict reduction equality", not bad, f"{len(samples)} instances, {len(bad)} mismatches",
                time.time() - start, 120)
    assert ok, bad[:3]


def _overlap_violations(cliques, n, r):
    # overlaps of all pairs at once: rows are clique incidence vectors
    if len(cliques) < 2:
        return 0
    a = np.zeros((len(cliques), n), dtype=np.int32)
    for i, c in enumerate(cliques):
        a[i, list(c)] = 1
    overlap = a @ a.T
    np.fill_diagonal(overlap, 0)
    hit = overlap[overlap > 0]
    return int(np.count_nonzero(3 * hit <= r))


def test_c04_vertex_overlap():
    start = time.time()
    violations = 0
    for r in range(3, 9):
        dmax = _largest_below(Fraction(5 * r, 3) - 1)
        for k in range(500):
            g = checks.trial_graph(f"c4:{r}:{k}", r, 14, dmax)
            cl = enumerate_krs(g, r)
            violations += _overlap_violations(cl, g.vertex_count, r)
    ok = record("C4 vertex overlap above r/3", violations == 0, f"3000 graphs, {violations} violations", time.time() - start, 60)
    assert ok


def test_c05_claw_freeness():
    start = time.time()
    claws = []
    for r in range(3, 9):
        dmax = _largest_below(Fraction(5 * r, 3) - 1)
        for k in range(500):
            g = checks.trial_graph(f"c4:{r}:{k}", r, 14, dmax)
            if find_claw(build_intersection_graph(g, r, "vertex")) is not None:
                claws.append(("vertex", r, k))
    for r in (4, 5):
        for k in range(500):
            g = checks.trial_graph(f"c5:{r}:{k}", r, 14, 2 * r - 2)
            if find_claw(build_intersection_graph(g, r, "edge")) is not None:
                claws.append(("edge", r, k))
    ok = record("C5 claw-freeness", not claws, f"3000 vertex-mode + 1000 edge-mode graphs, {len(claws)} claws",
                time.time() - start, 60)
    assert ok, claws[:5]


def test_c06_maximal_is_maximum():
    start = time.time()
    bad = []
    for r in range(3, 9):
        dmax = _largest_below(Fraction(3 * r, 2) - 1)
        for k in range(500):
            g = checks.trial_graph(f"c6:{r}:{k}", r, 14, dmax)
            cl = enumerate_krs(g, r)
            for mode in ("vertex", "edge"):
                if len(greedy_maximal_packing(g, r, mode, cl)) != len(exact_max_packing(g, r, mode, cliques=cl)):
                    bad.append((r, k, mode))
    ok = record("C6 maximal = maximum", not bad, f"3000 graphs x 2 modes, {len(bad)} mismatches", time.time() - start, 120)
    assert ok, bad[:5]


def test_c07_disjointness_coincidence():
    start = time.time()
    bad = []
    for r in range(4, 9):
        for k in range(300):
            g = checks.trial_graph(f"c7:{r}:{k}", r, 14, 2 * r - 3)
            cl = enumerate_krs(g, r)
            if not check_disjointness_coincidence(g, r):
                bad.append((r, k, "shared vertex"))
            if len(exact_max_packing(g, r, "vertex", cliques=cl)) != len(exact_max_packing(g, r, "edge", cliques=cl)):
                bad.append((r, k, "optimum"))
    ok = record("C7 disjointness coincidence", not bad, f"1500 graphs, {len(bad)} failures", time.time() - start, 60)
    assert ok, bad[:5]


def _end_to_end(targets, family, r, budget, label):
    start = time.time()
    bad = []
    sizes = []
    for phi, red in zip(family, targets[r]):
        opt_sat = naive_maxsat(phi)
        assert brute_force_maxsat(phi)[0] == opt_sat
        cliques = enumerate_krs(red.target, r)
        sizes.append((red.target.vertex_count, len(cliques)))
        opt = len(exact_max_packing(red.target, r, "edge", cliques=cliques))
        if opt != red.baseline + opt_sat:
            bad.append((str(phi), opt, red.baseline, opt_sat))
    detail = (f"{len(family)} formulas, {len(bad)} mismatches, targets {min(s[0] for s in sizes)}-"
              f"{max(s[0] for s in sizes)} vertices, at most {max(s[1] for s in sizes)} K_{r}s")
    ok = record(label, not bad, detail, time.time() - start, budget)
    assert ok, bad[:3]


def test_c08_edk4_identity(formula_family, edk_targets):
    _end_to_end(edk_targets, formula_family, 4, 300, "C8 EDK_4 optimum identity")


def test_c09_edk5_identity(formula_family, edk_targets):
    _end_to_end(edk_targets, formula_family, 5, 300, "C9 EDK_5 optimum identity")


def _single_cycle(h):
    n = len(h.nodes)
    if n < 3 or any(len(h.neighbors(i)) != 2 for i in range(n)):
        return False
    seen, stack = {0}, [0]
    while stack:
        for j in h.neighbors(stack.pop()):
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == n


def test_c10_gadget_cycles(formula_family, edk_targets):
    start = time.time()
    bad = []
    rings = 0
    for phi, red in zip(formula_family, edk_targets[4]):
        for i, m in enumerate(phi.occurrences):
            own = set(red.even[i]) | set(red.odd[i])
            # cliques of R_i among all target cliques, taken from the target itself
            members = [c for c in enumerate_krs(red.target, 4) if c in own]
            h = intersection_graph_of(members, "edge")
            rings += 1
            if len(members) != 6 * m or not _single_cycle(h):
                bad.append((str(phi), i))
    ok = record("C10 gadget cycle structure", not bad, f"{rings} gadgets, {len(bad)} malformed", time.time() - start, 30)
    assert ok, bad[:3]


def test_c11_canonicalization(formula_family, edk_targets):
    start = time.time()
    bad = []
    checked = 0
    rng = random.Random(11)
    for r in (4, 5):
        for phi, red in zip(formula_family, edk_targets[r]):
            cliques = enumerate_krs(red.target, r)
            masks = conflict_masks(cliques, "edge")
            for chosen in sample_packings(cliques, masks, rng, 200):
                t = Packing(tuple(cliques[i] for i in chosen), "edge", r)
                out = canonicalize_packing(red, t)
                checked += 1
                if not (is_canonical(red, out) and is_feasible(red.target, out) and out.size >= t.size):
                    bad.append((r, str(phi), chosen, "canonical"))
                gain = t.size - red.baseline
                if gain > 0 and count_satisfied(phi, edk_packing_to_assignment(red, t)) < gain:
                    bad.append((r, str(phi), chosen, "assignment"))
    ok = record("C11 canonicalization", not bad, f"{checked} sub-packings, {len(bad)} failures", time.time() - start, 120)
    assert ok, bad[:3]


def test_c12_l_reduction_constants(formula_family):
    start = time.time()
    reports = {
        "vdkr": verify_l_reduction("vdkr", _c3_samples(), seed=12),
        "edk4": verify_l_reduction("edk4", formula_family, seed=12),
        "edk5": verify_l_reduction("edk5", formula_family, seed=12),
    }
    expected = {"vdkr": (1, 1), "edk4": (13, 1), "edk5": (9, 1)}
    bad = {k: rep.violations[:3] for k, rep in reports.items() if rep.violations or (rep.alpha, rep.beta) != expected[k]}
    detail = ", ".join(
        f"{k}: {rep.solutions_checked} solutions, alpha ratio <= {rep.max_alpha_ratio}, beta ratio <= {rep.max_beta_ratio}"
        for k, rep in reports.items()
    )
    ok = record("C12 L-reduction constants", not bad, detail, time.time() - start, 180)
    assert ok, bad


def _random_max2sat3(rng, max_vars=12):
    n = rng.randint(1, max_vars)
    count = [0] * n
    clauses = []
    for _ in range(rng.randint(0, 3 * n)):
        free = [v for v in range(n) if count[v] < 3]
        if not free:
            break
        vs = rng.sample(free, min(len(free), rng.choice((1, 2))))
        for v in vs:
            count[v] += 1
        clauses.append(tuple(Literal(v, rng.random() < 0.5) for v in vs))
    return Formula(n, tuple(clauses))


def test_c13_maxsat_guarantees():
    start = time.time()
    rng = random.Random(13)
    bad = []
    for k in range(1000):
        phi = _random_max2sat3(rng)
        if 2 * count_satisfied(phi, greedy_half(phi)) < len(phi.clauses):
            bad.append((k, "greedy", str(phi)))
        pre = preprocess_single_occurrence(phi)
        if brute_force_maxsat(phi)[0] != brute_force_maxsat(pre.formula)[0] + pre.removed_clauses:
            bad.append((k, "preprocess", str(phi)))
    ok = record("C13 MaxSAT guarantees", not bad, f"1000 formulas, {len(bad)} failures", time.time() - start, 30)
    assert ok, bad[:3]


def _golden_regime(r, delta, mode):
    # integer-only restatement of the table; no fractions, no shared code
    if 2 * delta < 3 * r - 2:
        return "LinearTime"
    if mode == "edge" and r <= 5:
        return "PolyEdgeClawFree" if delta <= 2 * r - 2 else "ApxHard"
    if 3 * delta < 5 * r - 3:
        return "PolyVertexClawFree"
    return "ApxHard"


def test_c14_classifier_table():
    start = time.time()
    bad = []
    for r in range(3, 13):
        for delta in range(1, 26):
            for mode in ("vertex", "edge"):
                got = classify_regime(r, delta, mode).tag.value
                if got != _golden_regime(r, delta, mode):
                    bad.append((r, delta, mode, got))
    anchors = [
        (3, 3, "vertex", True), (3, 4, "vertex", False),
        (3, 4, "edge", True), (3, 5, "edge", False),
        (4, 7, "edge", False), (5, 9, "edge", False),
    ]
    for r, delta, mode, tractable in anchors:
        if classify_regime(r, delta, mode).tractable != tractable:
            bad.append(("anchor", r, delta, mode))
    # hardness begins exactly at ceil(5r/3) - 1 in vertex mode
    for r in range(3, 13):
        edge = math.ceil(Fraction(5 * r, 3)) - 1
        if classify_regime(r, edge, "vertex").tag is not RegimeTag.APX_HARD:
            bad.append(("boundary", r))
        if classify_regime(r, edge - 1, "vertex").tag is RegimeTag.APX_HARD:
            bad.append(("below boundary", r))
    ok = record("C14 classifier table", not bad, f"500 grid cells + 6 anchors, {len(bad)} mismatches", time.time() - start, 1)
    assert ok, bad[:5]
