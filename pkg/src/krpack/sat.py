"""MAX-2SAT(3) formulas: evaluation, preprocessing, greedy and exact MaxSAT."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from itertools import combinations_with_replacement, product
from typing import NamedTuple, Sequence

import numpy as np

MAX_BRUTE_FORCE_VARIABLES = 24


class FormulaError(ValueError):
    pass


class VariableGuardExceeded(FormulaError):
    """Too many variables for exhaustive search."""


class Literal(NamedTuple):
    variable: int
    positive: bool

    def value(self, assignment: Sequence[bool]) -> bool:
        return assignment[self.variable] == self.positive

    def to_dimacs(self) -> int:
        return self.variable + 1 if self.positive else -(self.variable + 1)

    @classmethod
    def from_dimacs(cls, lit: int) -> "Literal":
        if lit == 0:
            raise FormulaError("literal 0 is a clause terminator, not a literal")
        return cls(abs(lit) - 1, lit > 0)

    def __str__(self) -> str:
        return f"x{self.variable + 1}" if self.positive else f"~x{self.variable + 1}"


Clause = tuple[Literal, ...]


@dataclass(frozen=True)
class Formula:
    """CNF formula with clauses of one or two literals.

    Every variable may occur in at most three clauses, and a clause may not
    mention the same variable twice.
    """

    variable_count: int
    clauses: tuple[Clause, ...]

    def __post_init__(self):
        clauses = tuple(tuple(Literal(*lit) for lit in c) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        if self.variable_count < 0:
            raise FormulaError("variable count must be non-negative")
        for k, clause in enumerate(clauses):
            if not 1 <= len(clause) <= 2:
                raise FormulaError(f"clause {k + 1} has {len(clause)} literals; expected 1 or 2")
            vars_ = [lit.variable for lit in clause]
            for v in vars_:
                if not 0 <= v < self.variable_count:
                    raise FormulaError(f"clause {k + 1} mentions x{v + 1}, beyond {self.variable_count} variables")
            if len(set(vars_)) != len(vars_):
                raise FormulaError(f"clause {k + 1} mentions x{vars_[0] + 1} twice")
        for v, m in enumerate(self.occurrences):
            if m > 3:
                raise FormulaError(f"variable x{v + 1} occurs in {m} clauses; at most 3 allowed")

    @classmethod
    def from_dimacs_clauses(cls, variable_count: int, clauses: Sequence[Sequence[int]]) -> "Formula":
        return cls(variable_count, tuple(tuple(Literal.from_dimacs(x) for x in c) for c in clauses))

    @property
    def occurrences(self) -> list[int]:
        """Occurrence count m_i per variable."""
        counts = Counter(lit.variable for c in self.clauses for lit in c)
        return [counts[v] for v in range(self.variable_count)]

    def occurrence_list(self) -> list[list[tuple[int, int]]]:
        """Per variable, its ``(clause index, literal position)`` pairs in order."""
        occ: list[list[tuple[int, int]]] = [[] for _ in range(self.variable_count)]
        for k, clause in enumerate(self.clauses):
            for pos, lit in enumerate(clause):
                occ[lit.variable].append((k, pos))
        return occ

    @property
    def reduction_ready(self) -> bool:
        return all(2 <= m <= 3 for m in self.occurrences)

    def require_reduction_ready(self) -> None:
        for v, m in enumerate(self.occurrences):
            if not 2 <= m <= 3:
                raise FormulaError(f"variable x{v + 1} occurs {m} times; reductions need 2 <= m_i <= 3")

    def __len__(self) -> int:
        return len(self.clauses)

    def __str__(self) -> str:
        return " & ".join("(" + " | ".join(str(lit) for lit in c) + ")" for c in self.clauses) or "(empty)"


def count_satisfied(phi: Formula, assignment: Sequence[bool]) -> int:
    if len(assignment) != phi.variable_count:
        raise FormulaError(f"assignment covers {len(assignment)} of {phi.variable_count} variables")
    return sum(any(lit.value(assignment) for lit in c) for c in phi.clauses)


class Preprocessed(NamedTuple):
    formula: Formula
    fixed: dict[int, bool]
    kept: tuple[int, ...]
    removed_clauses: int


def preprocess_single_occurrence(phi: Formula) -> Preprocessed:
    """Fix every variable that occurs in exactly one clause, to a fixpoint.

    Such a variable is set to satisfy its clause, and the clause is dropped.
    Variables left with no occurrences are dropped too (and are not
    reported in ``fixed``).  The residual formula is renumbered densely;
    ``kept[i]`` is the original index of its variable ``i``.
    """
    clauses = list(phi.clauses)
    fixed: dict[int, bool] = {}
    removed = 0
    while True:
        counts = Counter(lit.variable for c in clauses for lit in c)
        single = next((v for v in sorted(counts) if counts[v] == 1), None)
        if single is None:
            break
        k = next(k for k, c in enumerate(clauses) if any(lit.variable == single for lit in c))
        lit = next(lit for lit in clauses[k] if lit.variable == single)
        fixed[single] = lit.positive
        del clauses[k]
        removed += 1
    kept = tuple(sorted({lit.variable for c in clauses for lit in c}))
    new_index = {v: i for i, v in enumerate(kept)}
    residual = Formula(
        len(kept),
        tuple(tuple(Literal(new_index[lit.variable], lit.positive) for lit in c) for c in clauses),
    )
    return Preprocessed(residual, fixed, kept, removed)


def greedy_half(phi: Formula) -> list[bool]:
    """Assignment satisfying at least half of the clauses.

    Repeatedly sets the unset variable whose majority polarity satisfies
    the most still-unsatisfied clauses (ties: lower index, then positive).
    """
    n = phi.variable_count
    assignment: list = [None] * n
    open_clauses = set(range(len(phi.clauses)))
    occ = phi.occurrence_list()
    for _ in range(n):
        best = None
        for v in range(n):
            if assignment[v] is not None:
                continue
            pos = sum(1 for k, p in occ[v] if k in open_clauses and phi.clauses[k][p].positive)
            neg = sum(1 for k, p in occ[v] if k in open_clauses and not phi.clauses[k][p].positive)
            gain, positive = (pos, True) if pos >= neg else (neg, False)
            if best is None or gain > best[0]:
                best = (gain, v, positive)
        _, v, positive = best
        assignment[v] = positive
        for k, p in occ[v]:
            if phi.clauses[k][p].positive == positive:
                open_clauses.discard(k)
    return assignment


def brute_force_maxsat(phi: Formula, max_variables: int = MAX_BRUTE_FORCE_VARIABLES) -> tuple[int, list[bool]]:
    """Exact MaxSAT optimum over all assignments.

    The witness is lexicographically least with ``False < True`` and
    ``x1`` most significant.
    """
    n = phi.variable_count
    if n > max_variables:
        raise VariableGuardExceeded(f"{n} variables exceed the brute-force guard of {max_variables}")
    idx = np.arange(1 << n, dtype=np.int64)
    bits = [((idx >> (n - 1 - v)) & 1).astype(bool) for v in range(n)]
    sat = np.zeros(1 << n, dtype=np.int32)
    for clause in phi.clauses:
        hit = np.zeros(1 << n, dtype=bool)
        for lit in clause:
            hit |= bits[lit.variable] if lit.positive else ~bits[lit.variable]
        sat += hit
    best = int(np.argmax(sat))
    witness = [bool((best >> (n - 1 - v)) & 1) for v in range(n)]
    return int(sat[best]), witness


def two_variable_formulas() -> list[Formula]:
    """Every reduction-ready formula over x1, x2 with two-literal clauses.

    Both variables then occur once per clause, so there are 2 or 3 clauses.
    Clause lists are taken up to reordering; literal order inside a clause
    is kept, since it decides which half of the clause gadget is used.
    """
    kinds = []
    for p1, p2 in product((True, False), repeat=2):
        kinds.append((Literal(0, p1), Literal(1, p2)))
        kinds.append((Literal(1, p2), Literal(0, p1)))
    out = []
    for size in (2, 3):
        for clauses in combinations_with_replacement(kinds, size):
            out.append(Formula(2, tuple(clauses)))
    return out


def random_reduction_ready_formula(variable_count: int, seed: int, unit_prob: float = 0.0) -> Formula:
    """Random formula where every variable occurs 2 or 3 times.

    Clauses never repeat a variable.  With ``unit_prob == 0`` every clause
    has two literals; otherwise some occurrences are placed in unit
    clauses instead of being paired.
    """
    if variable_count == 1 and unit_prob == 0:
        raise FormulaError("a single variable cannot fill two-literal clauses")
    rng = random.Random(seed)
    while True:
        counts = [rng.choice((2, 3)) for _ in range(variable_count)]
        slots = [v for v, m in enumerate(counts) for _ in range(m)]
        rng.shuffle(slots)
        clauses = []
        ok = True
        while slots:
            v = slots.pop()
            if not slots and unit_prob == 0:
                ok = False
                break
            if not slots or rng.random() < unit_prob:
                clauses.append((v,))
                continue
            partner = next((k for k in range(len(slots) - 1, -1, -1) if slots[k] != v), None)
            if partner is None:
                ok = False
                break
            clauses.append((v, slots.pop(partner)))
        if not ok:
            continue
        return Formula(
            variable_count,
            tuple(tuple(Literal(v, rng.random() < 0.5) for v in c) for c in clauses),
        )
