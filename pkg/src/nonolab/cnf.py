"""CNF clause database, measurement, and DIMACS text format.

Literals follow the DIMACS convention: variable ids are positive integers,
a negative integer is the negated variable.  Zero never appears in a clause.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class CnfError(ValueError):
    """Malformed clause or DIMACS document."""


@dataclass
class CnfFormula:
    """Clause list over variables 1..variable_count."""

    clauses: list[list[int]] = field(default_factory=list)
    variable_count: int = 0

    def add_clause(self, lits: Sequence[int]) -> None:
        clause = list(lits)
        if not clause:
            raise CnfError("refusing to add an empty clause")
        for lit in clause:
            if lit == 0:
                raise CnfError("literal 0 is not allowed")
            if abs(lit) > self.variable_count:
                self.variable_count = abs(lit)
        self.clauses.append(clause)

    def extend(self, clauses: Iterable[Sequence[int]]) -> None:
        for c in clauses:
            self.add_clause(c)

    @property
    def clause_count(self) -> int:
        return len(self.clauses)


def measure(formula: CnfFormula) -> tuple[int, int, int]:
    """Exact (clause count, total literal occurrences, distinct variables)."""
    total = 0
    seen: set[int] = set()
    for clause in formula.clauses:
        total += len(clause)
        for lit in clause:
            seen.add(abs(lit))
    return len(formula.clauses), total, len(seen)


def to_dimacs(formula: CnfFormula) -> str:
    lines = [f"p cnf {formula.variable_count} {len(formula.clauses)}"]
    for clause in formula.clauses:
        lines.append(" ".join(str(lit) for lit in clause) + " 0")
    return "\n".join(lines) + "\n"


_HEADER = re.compile(r"p\s+cnf\s+(\d+)\s+(\d+)")


def from_dimacs(text: str) -> CnfFormula:
    header: tuple[int, int] | None = None
    clauses: list[list[int]] = []
    pending: list[int] = []
    for lineno, line in enumerate(text.split("\n"), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("c") or stripped.startswith("%"):
            continue
        if header is None:
            match = _HEADER.match(stripped)
            if match is None:
                raise CnfError(f"line {lineno}: expected 'p cnf <vars> <clauses>' header")
            header = (int(match.group(1)), int(match.group(2)))
            continue
        if stripped == "0" and not pending:
            continue  # some generators emit a lone trailing terminator
        try:
            tokens = [int(tok) for tok in stripped.split()]
        except ValueError as exc:
            raise CnfError(f"line {lineno}: non-integer token") from exc
        for tok in tokens:
            if tok == 0:
                if not pending:
                    raise CnfError(f"line {lineno}: empty clause in input")
                clauses.append(pending)
                pending = []
            else:
                pending.append(tok)
    if header is None:
        raise CnfError("missing DIMACS header")
    if pending:
        raise CnfError("unterminated final clause (missing 0)")
    nvars, _ = header
    formula = CnfFormula(variable_count=nvars)
    for clause in clauses:
        formula.add_clause(clause)
    if formula.variable_count > nvars:
        raise CnfError(
            f"clauses mention variable {formula.variable_count} beyond header count {nvars}"
        )
    return formula


def clause_satisfied(clause: Sequence[int], model: Sequence[bool]) -> bool:
    """Model is indexed by variable id; index 0 is unused."""
    return any((lit > 0) == model[abs(lit)] for lit in clause)


def model_satisfies(formula: CnfFormula, model: Sequence[bool]) -> bool:
    return all(clause_satisfied(c, model) for c in formula.clauses)
