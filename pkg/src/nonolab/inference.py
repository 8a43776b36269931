"""Cell inferability: which cells take the same value in every solution.

A cell is inferable to a value when fixing it to the opposite value makes the
board formula unsatisfiable.  The experiment metric counts only cells
inferable to filled, by testing the formula under the single assumption that
the cell is empty; the general decision form tests both polarities.

All queries against one board share a single incremental solver session, so
learned clauses carry over between the per-cell tests.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .automata import satisfying_lines
from .boards import CellState, CompleteFill, PartialFill, Puzzle, extract_line_runs, verify_solution
from .encoding import VarMap, encode_puzzle
from .sat import Solver

#: Largest board (cells) the exhaustive oracle will accept.
MAX_BRUTE_FORCE_CELLS = 25


class InconsistentBoardError(ValueError):
    """Inference is undefined on boards without a solution."""


@dataclass(frozen=True)
class InferenceReport:
    """Outcome of the per-cell filled-inference pass over one board."""

    board_id: str
    filled_cell_count: int
    inferred_filled: int
    proportion_inferred: float
    total_propagations: int
    queries_run: int


def _fixed_assumptions(var_map: VarMap, fixed: Optional[PartialFill]) -> list[int]:
    if fixed is None:
        return []
    if fixed.m != var_map.m or fixed.n != var_map.n:
        raise ValueError("partial fill dimensions do not match the puzzle")
    assumptions = []
    for i in range(fixed.m):
        for j in range(fixed.n):
            state = fixed.cells[i][j]
            if state is CellState.FILLED:
                assumptions.append(var_map.cell_var(i, j))
            elif state is CellState.EMPTY:
                assumptions.append(-var_map.cell_var(i, j))
    return assumptions


def is_inferable(
    solver: Solver,
    var_map: VarMap,
    cell: tuple[int, int],
    polarity: CellState,
    fixed: Optional[PartialFill] = None,
) -> bool:
    """True iff every solution extending ``fixed`` gives ``cell`` ``polarity``.

    The solver session must hold the board formula.  Raises
    InconsistentBoardError when the formula plus fixed cells has no solution.
    """
    if polarity not in (CellState.FILLED, CellState.EMPTY):
        raise ValueError("polarity must be FILLED or EMPTY")
    i, j = cell
    if fixed is not None and fixed.cells[i][j] is polarity:
        raise ValueError(f"cell {cell} is already assigned that value")
    base = _fixed_assumptions(var_map, fixed)
    outcome, _ = solver.solve(base)
    if not outcome.satisfiable:
        raise InconsistentBoardError("board formula with fixed cells is unsatisfiable")
    target = var_map.cell_var(i, j)
    contrary = -target if polarity is CellState.FILLED else target
    outcome, _ = solver.solve(base + [contrary])
    return not outcome.satisfiable


def count_inferred_filled(
    puzzle: Puzzle,
    generating_fill: CompleteFill,
    board_id: str = "",
    conflict_budget: Optional[int] = None,
) -> InferenceReport:
    """Run the filled-inference test on every cell of a consistent board.

    For each cell the board formula is solved under the single assumption
    that the cell is empty; unsatisfiability means the cell is filled in all
    solutions.  The proportion denominator is the generating fill's filled
    count, with the all-empty board defined as fully inferred (proportion 1).
    """
    if not verify_solution(puzzle, generating_fill):
        raise ValueError("generating fill does not solve the puzzle")
    formula, var_map = encode_puzzle(puzzle)
    solver = Solver(formula)
    inferred = 0
    total_props = 0
    queries = 0
    for i in range(puzzle.m):
        for j in range(puzzle.n):
            outcome, stats = solver.solve(
                [-var_map.cell_var(i, j)], conflict_budget=conflict_budget
            )
            queries += 1
            total_props += stats.propagations
            if not outcome.satisfiable:
                inferred += 1
    filled = generating_fill.filled_count()
    proportion = inferred / filled if filled else 1.0
    return InferenceReport(
        board_id=board_id,
        filled_cell_count=filled,
        inferred_filled=inferred,
        proportion_inferred=proportion,
        total_propagations=total_props,
        queries_run=queries,
    )


def decide_inference_session(
    solver: Solver,
    var_map: VarMap,
    fixed: Optional[PartialFill] = None,
    count_already_assigned: bool = False,
) -> bool:
    """Decision form over an existing session holding any board formula."""
    base = _fixed_assumptions(var_map, fixed)
    outcome, _ = solver.solve(base)
    if not outcome.satisfiable:
        raise InconsistentBoardError("board formula with fixed cells is unsatisfiable")
    for i in range(var_map.m):
        for j in range(var_map.n):
            state = fixed.cells[i][j] if fixed is not None else CellState.INDETERMINATE
            for polarity in (CellState.FILLED, CellState.EMPTY):
                if state is polarity and not count_already_assigned:
                    continue
                target = var_map.cell_var(i, j)
                contrary = -target if polarity is CellState.FILLED else target
                result, _ = solver.solve(base + [contrary])
                if not result.satisfiable:
                    return True
    return False


def decide_inference(
    puzzle: Puzzle,
    fixed: Optional[PartialFill] = None,
    count_already_assigned: bool = False,
) -> bool:
    """Does some cell take the same value in all solutions extending ``fixed``?

    Cells already assigned a value in ``fixed`` are not counted for that same
    value unless ``count_already_assigned`` is set (re-deriving a given is not
    an inference).
    """
    formula, var_map = encode_puzzle(puzzle)
    return decide_inference_session(
        Solver(formula), var_map, fixed, count_already_assigned
    )


def infer_cell_map(
    puzzle: Puzzle, fixed: Optional[PartialFill] = None
) -> tuple[list[list[CellState]], int, int]:
    """Per-cell inference grid: FILLED / EMPTY where forced, else INDETERMINATE.

    Returns (grid, queries run, total propagations over all queries).
    """
    formula, var_map = encode_puzzle(puzzle)
    solver = Solver(formula)
    base = _fixed_assumptions(var_map, fixed)
    outcome, _ = solver.solve(base)
    if not outcome.satisfiable:
        raise InconsistentBoardError("puzzle with fixed cells is unsatisfiable")
    grid = []
    props = 0
    queries = 0
    for i in range(puzzle.m):
        row = []
        for j in range(puzzle.n):
            var = var_map.cell_var(i, j)
            res, st = solver.solve(base + [-var])
            props += st.propagations
            queries += 1
            if not res.satisfiable:
                row.append(CellState.FILLED)
                continue
            res, st = solver.solve(base + [var])
            props += st.propagations
            queries += 1
            row.append(CellState.EMPTY if not res.satisfiable else CellState.INDETERMINATE)
        grid.append(row)
    return grid, queries, props


def enumerate_solutions(puzzle: Puzzle, fixed: Optional[PartialFill] = None):
    """Exhaustive solution generator via per-row candidate placement.

    Independent of the SAT path: rows come from direct run placement and
    columns are checked by run extraction.  Intended for small boards only.
    """
    m, n = puzzle.m, puzzle.n
    row_candidates = []
    for i, desc in enumerate(puzzle.row_descriptions):
        options = satisfying_lines(desc, n)
        if fixed is not None:
            frow = fixed.cells[i]
            options = [
                line
                for line in options
                if all(
                    (s is CellState.INDETERMINATE)
                    or (s is CellState.FILLED) == line[j]
                    for j, s in enumerate(frow)
                )
            ]
        row_candidates.append(options)
    col_descs = puzzle.col_descriptions
    for rows in itertools.product(*row_candidates):
        if all(
            extract_line_runs([rows[i][j] for i in range(m)]) == col_descs[j]
            for j in range(n)
        ):
            yield CompleteFill(rows)


def brute_force_inference(
    puzzle: Puzzle, fixed: Optional[PartialFill] = None
) -> list[list[CellState]]:
    """Independent oracle: enumerate all solutions and classify each cell.

    FILLED / EMPTY mean the cell takes that value in every solution
    consistent with ``fixed``; INDETERMINATE means it varies.
    """
    m, n = puzzle.m, puzzle.n
    if m * n > MAX_BRUTE_FORCE_CELLS:
        raise ValueError(
            f"board has {m * n} cells; brute force is limited to {MAX_BRUTE_FORCE_CELLS}"
        )
    always_filled = [[True] * n for _ in range(m)]
    always_empty = [[True] * n for _ in range(m)]
    count = 0
    for fill in enumerate_solutions(puzzle, fixed):
        count += 1
        for i in range(m):
            for j in range(n):
                if fill.cells[i][j]:
                    always_empty[i][j] = False
                else:
                    always_filled[i][j] = False
    if count == 0:
        raise InconsistentBoardError("no solutions consistent with the fixed cells")
    grid = []
    for i in range(m):
        row = []
        for j in range(n):
            if always_filled[i][j]:
                row.append(CellState.FILLED)
            elif always_empty[i][j]:
                row.append(CellState.EMPTY)
            else:
                row.append(CellState.INDETERMINATE)
        grid.append(row)
    return grid
