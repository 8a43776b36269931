"""CNF encoding of lines and whole boards via automaton unrolling.

Each line automaton is unrolled over positions 0..n with one-hot forward
reachability variables F(q, i) ("reading cells 1..i can leave the automaton
in state q") and backward acceptance variables B(q, i) ("from state q at
position i the remaining cells can still reach acceptance").  Clauses assert
initialization, transition propagation in both directions, dead-transition
exclusion, acceptance at position n, and F-to-B channeling.  A board encoding
is the conjunction of all row and column fragments over shared cell variables.

Lines with an empty description bypass the automaton machinery: they become
unit clauses forcing their cells empty.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .automata import LineAutomaton, build_automaton
from .boards import Description, Puzzle
from .cnf import CnfFormula


class EncodingError(ValueError):
    """Line cannot be encoded (description does not fit, bad arguments)."""


@dataclass(frozen=True)
class SizePrediction:
    """Closed-form formula sizes for one line of length n.

    ``total_variables`` counts literal occurrences; ``distinct_variables``
    counts distinct variables.  Both measurements are exposed because the two
    readings of "variables" differ.
    """

    clauses: int
    total_variables: int
    distinct_variables: int


def predict_size(n: int, t: int, sum_l: int) -> SizePrediction:
    """Predicted clause/variable counts for a line with t runs totalling sum_l."""
    if n < 1:
        raise EncodingError(f"line length must be positive, got {n}")
    if t < 0 or sum_l < t:
        raise EncodingError(f"need 0 <= t <= sum of runs, got t={t}, sum={sum_l}")
    if t == 0 and sum_l != 0:
        raise EncodingError(f"zero runs cannot fill {sum_l} cells")
    if sum_l + max(t - 1, 0) > n:
        raise EncodingError(f"t={t}, sum={sum_l} does not fit a line of length {n}")
    return SizePrediction(
        clauses=(5 * n + 2) * (t + 1 + sum_l) - 4,
        total_variables=(14 * n + 2) * t + 8 * n - 2 + (11 * n + 2) * sum_l,
        distinct_variables=(2 * n + 1) * (t + sum_l) + n,
    )


class VariableAllocator:
    """Hands out fresh variable ids above the already-used range."""

    def __init__(self, first_free: int = 1):
        self.next_id = first_free

    def fresh(self) -> int:
        v = self.next_id
        self.next_id += 1
        return v

    def fresh_block(self, count: int) -> range:
        block = range(self.next_id, self.next_id + count)
        self.next_id += count
        return block


@dataclass(frozen=True)
class LineAuxRanges:
    """Auxiliary variable ranges of one encoded line, tagged by role."""

    forward: Optional[tuple[int, int]]  # inclusive (lo, hi), None when line is empty
    backward: Optional[tuple[int, int]]


def encode_line(
    automaton: LineAutomaton,
    cell_vars: Sequence[int],
    allocator: VariableAllocator,
) -> tuple[list[list[int]], LineAuxRanges]:
    """Clauses forcing the cells of one line to satisfy its description.

    For every complete assignment to ``cell_vars`` the fragment is satisfiable
    by some assignment to the auxiliaries iff the automaton accepts the
    induced line.
    """
    n = len(cell_vars)
    desc = automaton.description
    if not desc.fits(n):
        raise EncodingError(f"description {desc.runs} does not fit a line of length {n}")
    if not desc.runs:
        # 0* line: every cell is forced empty, no auxiliaries needed.
        return [[-v] for v in cell_vars], LineAuxRanges(None, None)

    states = automaton.state_count  # == t + 1 + sum of runs
    last = states - 1
    # Forward variables F(q, i) for all states at positions 0..n.
    fwd_block = allocator.fresh_block(states * (n + 1))

    def fv(q: int, i: int) -> int:
        return fwd_block[q * (n + 1) + i]

    # Backward variables B(q, i) for states 1..last at positions 1..n.
    bwd_block = allocator.fresh_block((states - 1) * n)

    def bv(q: int, i: int) -> int:
        return bwd_block[(q - 1) * n + (i - 1)]

    entry = automaton.entry_bit
    clauses: list[list[int]] = []

    # Initialization: only the start state is reachable before any cell.
    clauses.append([fv(0, 0)])
    for q in range(1, states):
        clauses.append([-fv(q, 0)])

    for i in range(n):
        cell = cell_vars[i]
        for q in range(states):
            fqi = fv(q, i)
            for bit, nxt in ((False, automaton.on_empty[q]), (True, automaton.on_filled[q])):
                mismatch = -cell if bit else cell  # negation of "cell reads `bit`"
                if nxt is None:
                    clauses.append([-fqi, mismatch])  # dead transition
                else:
                    clauses.append([-fqi, mismatch, fv(nxt, i + 1)])

    # Backward direction: a reachable state pins its entry bit and needs a
    # reachable predecessor.
    preds = [automaton.predecessors(q) for q in range(states)]
    for i in range(n):
        cell = cell_vars[i]
        for q in range(states):
            fq = fv(q, i + 1)
            clauses.append([-fq, cell if entry[q] else -cell])
            clauses.append([-fq] + [fv(p, i) for p in preds[q]])

    clauses.append([fv(a, n) for a in sorted(automaton.accepting)])

    # Acceptance variables mirror the run in the other direction and channel
    # with the forward side; redundant for semantics, strong for propagation.
    for q in range(1, states):
        for i in range(1, n + 1):
            clauses.append([-fv(q, i), bv(q, i)])
    for q in range(1, states):
        for i in range(1, n):
            cell = cell_vars[i]  # cell consumed between positions i and i+1
            bqi = bv(q, i)
            for bit, nxt in ((False, automaton.on_empty[q]), (True, automaton.on_filled[q])):
                mismatch = -cell if bit else cell
                if nxt is None:
                    clauses.append([-bqi, mismatch])
                else:
                    clauses.append([-bqi, mismatch, bv(nxt, i + 1)])
        if q not in automaton.accepting:
            clauses.append([-bv(q, n)])

    aux = LineAuxRanges(
        forward=(fwd_block[0], fwd_block[-1]),
        backward=(bwd_block[0], bwd_block[-1]) if len(bwd_block) else None,
    )
    return clauses, aux


def encode_line_formula(desc: Description, n: int) -> tuple[CnfFormula, list[int]]:
    """Standalone formula for a single line; cells are variables 1..n."""
    cell_vars = list(range(1, n + 1))
    allocator = VariableAllocator(n + 1)
    clauses, _ = encode_line(build_automaton(desc), cell_vars, allocator)
    formula = CnfFormula(variable_count=max(n, allocator.next_id - 1))
    formula.extend(clauses)
    return formula, cell_vars


@dataclass(frozen=True)
class VarMap:
    """Cell-to-variable mapping plus per-line auxiliary ranges.

    Cell variables come first in row-major order, so rows and columns share
    them; each line's auxiliaries occupy one contiguous block after that.
    """

    m: int
    n: int
    row_aux: tuple[LineAuxRanges, ...]
    col_aux: tuple[LineAuxRanges, ...]

    def cell_var(self, i: int, j: int) -> int:
        if not (0 <= i < self.m and 0 <= j < self.n):
            raise IndexError(f"cell ({i}, {j}) outside {self.m}x{self.n} board")
        return i * self.n + j + 1

    def cell_of_var(self, var: int) -> tuple[int, int]:
        if not 1 <= var <= self.m * self.n:
            raise IndexError(f"variable {var} is not a cell variable")
        return (var - 1) // self.n, (var - 1) % self.n


def encode_puzzle(puzzle: Puzzle) -> tuple[CnfFormula, VarMap]:
    """Conjunction of all row and column fragments over shared cell variables.

    The result is satisfiable iff the puzzle has a solution, and the
    projections of its models onto cell variables are exactly the solutions.
    """
    m, n = puzzle.m, puzzle.n
    allocator = VariableAllocator(m * n + 1)
    clauses: list[list[int]] = []
    row_aux = []
    for i, desc in enumerate(puzzle.row_descriptions):
        cells = [i * n + j + 1 for j in range(n)]
        line_clauses, aux = encode_line(build_automaton(desc), cells, allocator)
        clauses.extend(line_clauses)
        row_aux.append(aux)
    col_aux = []
    for j, desc in enumerate(puzzle.col_descriptions):
        cells = [i * n + j + 1 for i in range(m)]
        line_clauses, aux = encode_line(build_automaton(desc), cells, allocator)
        clauses.extend(line_clauses)
        col_aux.append(aux)
    formula = CnfFormula(variable_count=allocator.next_id - 1)
    formula.extend(clauses)
    return formula, VarMap(m, n, tuple(row_aux), tuple(col_aux))
