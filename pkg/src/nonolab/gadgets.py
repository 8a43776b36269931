"""Circuit-element gadget boards: loading, enumeration, and property checks.

Each gadget is an 11x11 puzzle with labeled port cells.  Ports come in
positive/negative pairs per signal; in every solution exactly one cell of a
pair is filled.  Signals use the construction's wiring convention: a gadget
reads its input from the negative input cell and emits its output on the
positive output cell.  Adjacent tiles couple a positive input to the
preceding negative output, which is exactly what keeps a value upright as it
travels: a false circuit output surfaces as the filled positive cell at the
output terminal.

The property suite enumerates each gadget's full solution set and checks the
gate behavior (negation, conjunction, disjunction, fan-out, crossing) at the
ports, port-cell non-inferability in isolation, and the structural alignment
needed for side-by-side tiling.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence

from .boards import CompleteFill, Description, Puzzle, verify_solution
from .encoding import encode_puzzle
from .formats import FormatError, puzzle_from_text
from .inference import is_inferable
from .boards import CellState
from .sat import Solver

GADGET_NAMES = ("not", "and", "or", "wire", "crossover", "splitter", "input", "output")

#: Signals each gadget must expose (each signal is a pos/neg cell pair).
REQUIRED_SIGNALS = {
    "not": ("in", "out"),
    "and": ("in1", "in2", "out"),
    "or": ("in1", "in2", "out"),
    "wire": ("in", "out"),
    "crossover": ("in1", "in2", "out1", "out2"),
    "splitter": ("in", "out1", "out2"),
    "input": ("out",),
    "output": ("in",),
}

DEFAULT_SOLUTION_LIMIT = 10_000


class GadgetError(ValueError):
    """Malformed gadget data file; the message names the offending gadget."""


@dataclass(frozen=True)
class GadgetSpec:
    """One gadget: its puzzle plus labeled port coordinates."""

    name: str
    puzzle: Puzzle
    ports: dict[str, tuple[int, int]]

    def signal_pair(self, signal: str) -> tuple[tuple[int, int], tuple[int, int]]:
        """(positive cell, negative cell) of one signal."""
        return self.ports[f"{signal}.pos"], self.ports[f"{signal}.neg"]

    def signals(self) -> tuple[str, ...]:
        return tuple(sorted({label.split(".")[0] for label in self.ports}))


@dataclass
class PropertyCheck:
    """Outcome of one gadget property: passed / failed / skipped."""

    name: str
    status: str
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"


@dataclass
class GadgetReport:
    gadget: str
    solution_count: int
    exhaustive: bool
    checks: list[PropertyCheck] = field(default_factory=list)

    def all_passed(self) -> bool:
        return all(c.status in ("pass", "skipped") for c in self.checks)


def parse_gadget(name: str, text: str) -> GadgetSpec:
    if "ports:" not in text:
        raise GadgetError(f"gadget {name!r}: missing 'ports:' block")
    head, ports_part = text.split("ports:", 1)
    puzzle_text = "\n".join(
        line for line in head.split("\n") if not line.startswith("#")
    )
    try:
        puzzle = puzzle_from_text(puzzle_text)
    except FormatError as exc:
        raise GadgetError(f"gadget {name!r}: {exc}") from exc
    if puzzle.m != 11 or puzzle.n != 11:
        raise GadgetError(
            f"gadget {name!r}: expected an 11x11 board, got {puzzle.m}x{puzzle.n}"
        )
    ports: dict[str, tuple[int, int]] = {}
    for line in ports_part.strip().split("\n"):
        parts = line.split()
        if len(parts) != 3:
            raise GadgetError(f"gadget {name!r}: bad port line {line!r}")
        label, r_str, c_str = parts
        try:
            r, c = int(r_str), int(c_str)
        except ValueError as exc:
            raise GadgetError(f"gadget {name!r}: bad port coordinates {line!r}") from exc
        if not (0 <= r < 11 and 0 <= c < 11):
            raise GadgetError(f"gadget {name!r}: port {label} at ({r}, {c}) is off the board")
        if label in ports:
            raise GadgetError(f"gadget {name!r}: duplicate port label {label!r}")
        ports[label] = (r, c)
    for signal in REQUIRED_SIGNALS.get(name, ()):
        pos, neg = f"{signal}.pos", f"{signal}.neg"
        if pos not in ports or neg not in ports:
            raise GadgetError(f"gadget {name!r}: signal {signal!r} is missing a port pair")
        if ports[pos] == ports[neg]:
            raise GadgetError(f"gadget {name!r}: signal {signal!r} pair shares one cell")
    return GadgetSpec(name, puzzle, ports)


def load_gadgets(data_path: Optional[Path] = None) -> list[GadgetSpec]:
    """Load all eight gadgets from a directory or the packaged data files."""
    specs = []
    for name in GADGET_NAMES:
        if data_path is not None:
            path = Path(data_path) / f"{name}.txt"
            if not path.exists():
                raise GadgetError(f"gadget {name!r}: data file {path} not found")
            text = path.read_text()
        else:
            text = (
                resources.files("nonolab.data").joinpath(f"gadgets/{name}.txt").read_text()
            )
        specs.append(parse_gadget(name, text))
    return specs


def load_gadget(name: str, data_path: Optional[Path] = None) -> GadgetSpec:
    if name not in GADGET_NAMES:
        raise GadgetError(f"unknown gadget {name!r}; expected one of {GADGET_NAMES}")
    return next(s for s in load_gadgets(data_path) if s.name == name)


def enumerate_gadget_solutions(
    spec: GadgetSpec, limit: int = DEFAULT_SOLUTION_LIMIT
) -> list[CompleteFill]:
    """Distinct solutions found by repeated solving with blocking clauses.

    Exhaustive whenever fewer than ``limit`` solutions are returned.
    """
    if limit < 1:
        raise ValueError("limit must be at least 1")
    puzzle = spec.puzzle
    formula, var_map = encode_puzzle(puzzle)
    solver = Solver(formula)
    solutions: list[CompleteFill] = []
    while len(solutions) < limit:
        outcome, _ = solver.solve()
        if not outcome.satisfiable:
            break
        cells = tuple(
            tuple(outcome.model[var_map.cell_var(i, j)] for j in range(puzzle.n))
            for i in range(puzzle.m)
        )
        solutions.append(CompleteFill(cells))
        solver.add_clause(
            [
                -var_map.cell_var(i, j) if cells[i][j] else var_map.cell_var(i, j)
                for i in range(puzzle.m)
                for j in range(puzzle.n)
            ]
        )
    return solutions


def _signal_values(spec: GadgetSpec, fill: CompleteFill) -> dict[str, bool]:
    """Signal values of one solution: inputs at neg cells, outputs at pos cells."""
    values = {}
    for signal in spec.signals():
        pos, neg = spec.signal_pair(signal)
        source = neg if signal.startswith("in") else pos
        values[signal] = fill.cells[source[0]][source[1]]
    return values


_GATE_RULES = {
    "wire": lambda v: v["out"] == v["in"],
    "not": lambda v: v["out"] == (not v["in"]),
    "and": lambda v: v["out"] == (v["in1"] and v["in2"]),
    "or": lambda v: v["out"] == (v["in1"] or v["in2"]),
    "crossover": lambda v: v["out1"] == v["in1"] and v["out2"] == v["in2"],
    "splitter": lambda v: v["out1"] == v["in"] and v["out2"] == v["in"],
}


def attempt_concat_composition(left: Puzzle, right: Puzzle) -> Puzzle:
    """Side-by-side board whose rows are the concatenated run lists.

    Raises ValueError when a concatenated description no longer fits; the
    full-width frame rows of the gadgets always trip this, which is why the
    semantic composition check reports skipped.
    """
    if left.m != right.m:
        raise ValueError("row counts differ")
    rows = tuple(
        Description(left.row_descriptions[i].runs + right.row_descriptions[i].runs)
        for i in range(left.m)
    )
    return Puzzle(rows, left.col_descriptions + right.col_descriptions)


def verify_gadget_properties(
    spec: GadgetSpec, limit: int = DEFAULT_SOLUTION_LIMIT
) -> GadgetReport:
    """Run the full property suite against one gadget's solution set."""
    solutions = enumerate_gadget_solutions(spec, limit)
    exhaustive = len(solutions) < limit
    report = GadgetReport(spec.name, len(solutions), exhaustive)
    checks = report.checks

    m, n = spec.puzzle.m, spec.puzzle.n
    checks.append(
        PropertyCheck(
            "dimensions-11x11",
            "pass" if (m == 11 and n == 11) else "fail",
            f"{m}x{n}",
        )
    )
    checks.append(
        PropertyCheck(
            "consistent",
            "pass" if solutions else "fail",
            f"{len(solutions)} solution(s)" + ("" if exhaustive else " (limit hit)"),
        )
    )

    required = REQUIRED_SIGNALS[spec.name]
    have = spec.signals()
    checks.append(
        PropertyCheck(
            "ports-present",
            "pass" if all(s in have for s in required) else "fail",
            f"signals {', '.join(have)}",
        )
    )

    alignment_ok = True
    notes = []
    for signal in have:
        pos, neg = spec.signal_pair(signal)
        horizontal = pos[0] == neg[0] == 5
        vertical = pos[1] == neg[1] == 5
        if not (horizontal or vertical):
            alignment_ok = False
            notes.append(f"{signal} pair off the shared axis")
            continue
        boundary = neg[0] in (0, 10) or neg[1] in (0, 10)
        if not boundary:
            alignment_ok = False
            notes.append(f"{signal}.neg not on the tile boundary")
    checks.append(
        PropertyCheck("port-alignment", "pass" if alignment_ok else "fail", "; ".join(notes))
    )

    if not solutions:
        checks.append(PropertyCheck("port-exclusivity", "fail", "no solutions"))
        checks.append(PropertyCheck("gate-semantics", "fail", "no solutions"))
        checks.append(PropertyCheck("ports-not-inferable", "fail", "no solutions"))
        checks.append(PropertyCheck("composition-semantics", "skipped", "no solutions"))
        return report

    exclusive = all(
        fill.cells[pos[0]][pos[1]] != fill.cells[neg[0]][neg[1]]
        for fill in solutions
        for pos, neg in (spec.signal_pair(s) for s in have)
    )
    checks.append(
        PropertyCheck("port-exclusivity", "pass" if exclusive else "fail",
                      "exactly one cell of each pair filled in every solution")
    )

    tables = [_signal_values(spec, fill) for fill in solutions]
    if spec.name in _GATE_RULES:
        rule = _GATE_RULES[spec.name]
        ok = all(rule(v) for v in tables)
        seen_inputs = {
            tuple(v[s] for s in sorted(v) if s.startswith("in")) for v in tables
        }
        detail = f"{len(seen_inputs)} input combination(s) observed"
        checks.append(PropertyCheck("gate-semantics", "pass" if ok else "fail", detail))
    elif spec.name == "input":
        seen = {v["out"] for v in tables}
        checks.append(
            PropertyCheck(
                "gate-semantics",
                "pass" if seen == {True, False} else "fail",
                "both output polarities occur",
            )
        )
    else:  # output terminal
        seen = {v["in"] for v in tables}
        checks.append(
            PropertyCheck(
                "gate-semantics",
                "pass" if seen == {True, False} else "fail",
                "both input polarities occur",
            )
        )

    if spec.name == "input":
        checks.append(
            PropertyCheck("ports-not-inferable", "skipped", "input terminals are exempt")
        )
    elif not exhaustive:
        checks.append(
            PropertyCheck("ports-not-inferable", "skipped", "solution set not exhaustive")
        )
    else:
        formula, var_map = encode_puzzle(spec.puzzle)
        solver = Solver(formula)
        inferable = []
        for label, cell in sorted(spec.ports.items()):
            for polarity in (CellState.FILLED, CellState.EMPTY):
                if is_inferable(solver, var_map, cell, polarity):
                    inferable.append(f"{label}:{polarity.name.lower()}")
        checks.append(
            PropertyCheck(
                "ports-not-inferable",
                "pass" if not inferable else "fail",
                ", ".join(inferable) if inferable else "every port cell varies",
            )
        )

    try:
        attempt_concat_composition(spec.puzzle, spec.puzzle)
        composable = True
    except ValueError:
        composable = False
    checks.append(
        PropertyCheck(
            "composition-semantics",
            "skipped",
            "plain description concatenation cannot tile these boards "
            "(full-width frame rows do not fit side by side); "
            "signal behavior is checked per gadget instead"
            if not composable
            else "composed board built but boundary convention unverified",
        )
    )
    return report


def verify_all_gadgets(
    data_path: Optional[Path] = None, limit: int = DEFAULT_SOLUTION_LIMIT
) -> list[GadgetReport]:
    return [verify_gadget_properties(spec, limit) for spec in load_gadgets(data_path)]


def verify_noninference_certificate(
    puzzle: Puzzle, certificate: Sequence[CompleteFill]
) -> bool:
    """Check a no-cell-is-inferable certificate: 2mn solution fills.

    The certificate lists, for each cell in row-major order, first a solution
    with that cell filled and then one with it empty.  Verification is one
    description check per fill, polynomial in the board size.
    """
    m, n = puzzle.m, puzzle.n
    if len(certificate) != 2 * m * n:
        raise ValueError(
            f"certificate must contain {2 * m * n} fills, got {len(certificate)}"
        )
    for fill in certificate:
        if fill.m != m or fill.n != n:
            raise ValueError("certificate fill dimensions do not match the puzzle")
    index = 0
    for i in range(m):
        for j in range(n):
            filled_witness = certificate[index]
            empty_witness = certificate[index + 1]
            index += 2
            if not filled_witness.cells[i][j] or empty_witness.cells[i][j]:
                return False
            if not verify_solution(puzzle, filled_witness):
                return False
            if not verify_solution(puzzle, empty_witness):
                return False
    return True


def certificate_from_solutions(
    puzzle: Puzzle, solutions: Sequence[CompleteFill]
) -> Optional[list[CompleteFill]]:
    """Assemble a certificate from known solutions, or None if impossible."""
    m, n = puzzle.m, puzzle.n
    certificate: list[CompleteFill] = []
    for i in range(m):
        for j in range(n):
            filled = next((s for s in solutions if s.cells[i][j]), None)
            empty = next((s for s in solutions if not s.cells[i][j]), None)
            if filled is None or empty is None:
                return None
            certificate.extend([filled, empty])
    return certificate
