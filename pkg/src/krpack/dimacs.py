"""DIMACS edge and CNF readers/writers.  Vertices and variables are 1-based on disk."""

from __future__ import annotations

from pathlib import Path
from typing import Union

from .graph import Graph
from .sat import Formula, FormulaError, Literal


class ParseError(ValueError):
    pass


def parse_graph(text: str) -> Graph:
    n = None
    declared_m = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            if n is not None:
                raise ParseError(f"line {lineno}: second problem line")
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise ParseError(f"line {lineno}: expected 'p edge <n> <m>'")
            try:
                n, declared_m = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError(f"line {lineno}: non-integer counts") from None
            if n < 0 or declared_m < 0:
                raise ParseError(f"line {lineno}: negative counts")
            continue
        if parts[0] == "e":
            if n is None:
                raise ParseError(f"line {lineno}: edge before problem line")
            if len(parts) < 3:
                raise ParseError(f"line {lineno}: edge needs two endpoints")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError(f"line {lineno}: non-integer endpoint") from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"line {lineno}: endpoint out of range 1..{n}")
            if u == v:
                raise ParseError(f"line {lineno}: self-loop at vertex {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ParseError(f"line {lineno}: duplicate edge {key[0]} {key[1]}")
            seen.add(key)
            edges.append((u - 1, v - 1))
            continue
        raise ParseError(f"line {lineno}: unknown record {parts[0]!r}")
    if n is None:
        raise ParseError("missing problem line")
    if declared_m != len(edges):
        raise ParseError(f"problem line declares {declared_m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges)


def format_graph(g: Graph, comments: tuple[str, ...] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p edge {g.vertex_count} {g.edge_count}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def read_graph(path: Union[str, Path]) -> Graph:
    return parse_graph(Path(path).read_text())


def write_graph(g: Graph, path: Union[str, Path], comments: tuple[str, ...] = ()) -> None:
    Path(path).write_text(format_graph(g, comments))


def parse_cnf(text: str) -> Formula:
    nvars = nclauses = None
    clauses: list[list[int]] = []
    pending: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c" or parts[0] == "%":
            continue
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError(f"line {lineno}: expected 'p cnf <nvars> <nclauses>'")
            try:
                nvars, nclauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError(f"line {lineno}: non-integer counts") from None
            continue
        if nvars is None:
            raise ParseError(f"line {lineno}: clause before problem line")
        for tok in parts:
            try:
                lit = int(tok)
            except ValueError:
                raise ParseError(f"line {lineno}: bad literal {tok!r}") from None
            if lit == 0:
                if not pending:
                    raise ParseError(f"line {lineno}: empty clause")
                if len(pending) > 2:
                    raise ParseError(f"line {lineno}: clause {len(clauses) + 1} has {len(pending)} literals; at most 2 allowed")
                clauses.append(pending)
                pending = []
            else:
                if abs(lit) > nvars:
                    raise ParseError(f"line {lineno}: variable {abs(lit)} exceeds declared {nvars}")
                pending.append(lit)
    if nvars is None:
        raise ParseError("missing problem line")
    if pending:
        raise ParseError("last clause is not terminated by 0")
    if nclauses != len(clauses):
        raise ParseError(f"problem line declares {nclauses} clauses, found {len(clauses)}")
    try:
        return Formula(nvars, tuple(tuple(Literal.from_dimacs(x) for x in c) for c in clauses))
    except FormulaError as exc:
        raise ParseError(str(exc)) from None


def format_cnf(phi: Formula) -> str:
    lines = [f"p cnf {phi.variable_count} {len(phi.clauses)}"]
    lines.extend(" ".join(str(lit.to_dimacs()) for lit in c) + " 0" for c in phi.clauses)
    return "\n".join(lines) + "\n"


def read_cnf(path: Union[str, Path]) -> Formula:
    return parse_cnf(Path(path).read_text())


def write_cnf(phi: Formula, path: Union[str, Path]) -> None:
    Path(path).write_text(format_cnf(phi))
