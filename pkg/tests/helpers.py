"""Shared fixtures, hypothesis strategies and slow-but-obvious oracles."""

from itertools import combinations, product

from hypothesis import strategies as st

from krpack.graph import Graph


def bowtie():
    return Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])


def two_triangles():
    return Graph.from_edges(6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)])


def path(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star(leaves):
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def naive_krs(g, r):
    """All r-subsets that are cliques, straight from the definition."""
    return [
        c for c in combinations(range(g.vertex_count), r)
        if all(g.has_edge(u, v) for u, v in combinations(c, 2))
    ]


def naive_max_packing(cliques, limit):
    """Largest family of cliques with pairwise overlap below ``limit``, by subset search."""
    for k in range(len(cliques), 0, -1):
        for family in combinations(cliques, k):
            if all(len(set(a) & set(b)) < limit for a, b in combinations(family, 2)):
                return k
    return 0


def naive_mis(g):
    """Independence number by trying subsets from largest down."""
    n = g.vertex_count
    for k in range(n, 0, -1):
        for s in combinations(range(n), k):
            if not any(g.has_edge(u, v) for u, v in combinations(s, 2)):
                return k
    return 0


def naive_maxsat(phi):
    best = 0
    for values in product((False, True), repeat=phi.variable_count):
        sat = sum(any(values[lit.variable] == lit.positive for lit in c) for c in phi.clauses)
        best = max(best, sat)
    return best


@st.composite
def graphs(draw, max_n=9, min_n=0, max_degree=None):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    picks = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    deg = [0] * n
    edges = []
    for (u, v), keep in zip(pairs, picks):
        if not keep:
            continue
        if max_degree is not None and (deg[u] >= max_degree or deg[v] >= max_degree):
            continue
        deg[u] += 1
        deg[v] += 1
        edges.append((u, v))
    return Graph.from_edges(n, edges)


@st.composite
def formulas(draw, max_vars=6, max_clauses=8):
    """MAX-2SAT(3) formulas: 1-2 literals per clause, each variable at most 3 times."""
    from krpack.sat import Formula, Literal

    n = draw(st.integers(1, max_vars))
    count = [0] * n
    clauses = []
    for _ in range(draw(st.integers(0, max_clauses))):
        free = [v for v in range(n) if count[v] < 3]
        if not free:
            break
        width = draw(st.integers(1, min(2, len(free))))
        vs = draw(st.lists(st.sampled_from(free), min_size=width, max_size=width, unique=True))
        signs = draw(st.lists(st.booleans(), min_size=width, max_size=width))
        for v in vs:
            count[v] += 1
        clauses.append(tuple(Literal(v, s) for v, s in zip(vs, signs)))
    return Formula(n, tuple(clauses))


# acceptance results, printed once per criterion in the terminal summary
ACCEPTANCE = []


def record(label, ok, detail, elapsed, budget):
    within = elapsed <= budget
    line = f"{label}: {'PASS' if ok and within else 'FAIL'} ({detail}; {elapsed:.1f}s of {budget:.0f}s)"
    ACCEPTANCE.append(line)
    print(line)
    return ok and within
