import pytest
from hypothesis import given

from krpack.cliques import enumerate_krs, format_cliques, parse_cliques
from krpack.dimacs import (
    ParseError,
    format_cnf,
    format_graph,
    parse_cnf,
    parse_graph,
    read_cnf,
    read_graph,
    write_cnf,
    write_graph,
)
from krpack.sat import Formula

from helpers import bowtie, formulas, graphs


def test_format_bowtie():
    text = format_graph(bowtie(), comments=("bowtie",))
    assert text.splitlines() == [
        "c bowtie", "p edge 5 6",
        "e 1 2", "e 1 3", "e 2 3", "e 3 4", "e 3 5", "e 4 5",
    ]


def test_parse_ignores_comments_and_order():
    g = parse_graph("c hi\np edge 3 2\n\ne 3 2\nc mid\ne 1 2\n")
    assert g.edges() == [(0, 1), (1, 2)]


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("e 1 2\n", "before problem line"),
        ("p edge 3 1\ne 1 1\n", "self-loop"),
        ("p edge 3 2\ne 1 2\ne 2 1\n", "duplicate"),
        ("p edge 3 1\ne 1 4\n", "out of range"),
        ("p edge 3 2\ne 1 2\n", "declares 2 edges"),
        ("p edge 3 x\n", "non-integer"),
        ("p cnf 3 1\n", "expected 'p edge"),
        ("p edge 2 1\nq 1 2\n", "unknown record"),
        ("c nothing\n", "missing problem line"),
    ],
)
def test_parse_graph_errors(text, fragment):
    with pytest.raises(ParseError, match=fragment):
        parse_graph(text)


@given(graphs(max_n=10))
def test_graph_round_trip(g):
    assert parse_graph(format_graph(g)) == g


def test_graph_file_round_trip(tmp_path):
    path = tmp_path / "g.dimacs"
    write_graph(bowtie(), path)
    assert read_graph(path) == bowtie()


def test_parse_cnf():
    phi = parse_cnf("c x\np cnf 3 3\n1 -2 0\n2 3 0 -3\n0\n")
    assert phi.variable_count == 3
    assert [[lit.to_dimacs() for lit in c] for c in phi.clauses] == [[1, -2], [2, 3], [-3]]


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("p cnf 3 1\n1 2 3 0\n", "at most 2"),
        ("p cnf 2 1\n1 3 0\n", "variable 3 exceeds"),
        ("p cnf 2 2\n1 2 0\n", "declares 2 clauses"),
        ("p cnf 2 1\n1 2\n", "not terminated"),
        ("p cnf 2 1\n0\n", "empty clause"),
        ("p cnf 2 1\n1 -1 0\n", "x1 twice"),
        ("p cnf 1 4\n1 0\n1 0\n-1 0\n1 0\n", "x1 occurs in 4"),
        ("1 2 0\n", "before problem line"),
    ],
)
def test_parse_cnf_errors(text, fragment):
    with pytest.raises(ParseError, match=fragment):
        parse_cnf(text)


@given(formulas())
def test_cnf_round_trip(phi):
    assert parse_cnf(format_cnf(phi)) == phi


def test_cnf_file_round_trip(tmp_path):
    phi = Formula.from_dimacs_clauses(2, [[1, 2], [-1, -2]])
    write_cnf(phi, tmp_path / "f.cnf")
    assert read_cnf(tmp_path / "f.cnf") == phi


@given(graphs(max_n=8))
def test_clique_records_round_trip(g):
    cliques = enumerate_krs(g, 3)
    assert parse_cliques(format_cliques(cliques)) == cliques


def test_clique_records_are_one_based():
    assert format_cliques([(0, 1, 2)]) == "k 1 2 3\n"
    with pytest.raises(ValueError):
        parse_cliques("k 0 1 2\n")
    with pytest.raises(ValueError):
        parse_cliques("e 1 2\n")
