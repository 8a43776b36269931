"""Board data model: run descriptions, fills, random generation, verification.

A line (row or column) is a sequence of booleans; its description is the
ordered list of lengths of maximal filled runs.  A puzzle is the pair of all
row and column descriptions.  Boards generated here are consistent by
construction: the generating fill is itself a witness solution.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .rng import SplitMix64


class CellState(Enum):
    """Three-valued cell content used by partial fills."""

    FILLED = "#"
    EMPTY = "."
    INDETERMINATE = "?"


@dataclass(frozen=True)
class Description:
    """Ordered run lengths of one line; empty means an all-empty line."""

    runs: tuple[int, ...]

    def __post_init__(self):
        if any(r < 1 for r in self.runs):
            raise ValueError(f"run lengths must be positive, got {self.runs}")

    @classmethod
    def of(cls, runs: Iterable[int]) -> "Description":
        return cls(tuple(runs))

    @property
    def run_count(self) -> int:
        return len(self.runs)

    @property
    def filled_total(self) -> int:
        return sum(self.runs)

    def min_length(self) -> int:
        """Cells needed to place all runs with single separating gaps."""
        if not self.runs:
            return 0
        return self.filled_total + len(self.runs) - 1

    def fits(self, n: int) -> bool:
        return self.min_length() <= n


@dataclass(frozen=True)
class Puzzle:
    """Row and column descriptions of an m x n board."""

    row_descriptions: tuple[Description, ...]
    col_descriptions: tuple[Description, ...]

    def __post_init__(self):
        m, n = self.m, self.n
        if m < 1 or n < 1:
            raise ValueError("puzzle must have at least one row and one column")
        for i, d in enumerate(self.row_descriptions):
            if not d.fits(n):
                raise ValueError(f"row {i} description {d.runs} does not fit length {n}")
        for j, d in enumerate(self.col_descriptions):
            if not d.fits(m):
                raise ValueError(f"column {j} description {d.runs} does not fit length {m}")

    @classmethod
    def of(cls, rows: Iterable[Iterable[int]], cols: Iterable[Iterable[int]]) -> "Puzzle":
        return cls(
            tuple(Description.of(r) for r in rows),
            tuple(Description.of(c) for c in cols),
        )

    @property
    def m(self) -> int:
        return len(self.row_descriptions)

    @property
    def n(self) -> int:
        return len(self.col_descriptions)

    def is_balanced(self) -> bool:
        """Row run totals equal column run totals (necessary for solvability)."""
        return sum(d.filled_total for d in self.row_descriptions) == sum(
            d.filled_total for d in self.col_descriptions
        )


@dataclass(frozen=True)
class CompleteFill:
    """Fully determined board contents: True is a filled cell."""

    cells: tuple[tuple[bool, ...], ...]

    def __post_init__(self):
        if not self.cells or not self.cells[0]:
            raise ValueError("fill must have at least one row and one column")
        n = len(self.cells[0])
        if any(len(row) != n for row in self.cells):
            raise ValueError("all fill rows must have equal length")

    @classmethod
    def of(cls, rows: Iterable[Iterable[bool]]) -> "CompleteFill":
        return cls(tuple(tuple(bool(c) for c in row) for row in rows))

    @property
    def m(self) -> int:
        return len(self.cells)

    @property
    def n(self) -> int:
        return len(self.cells[0])

    def row(self, i: int) -> tuple[bool, ...]:
        return self.cells[i]

    def column(self, j: int) -> tuple[bool, ...]:
        return tuple(row[j] for row in self.cells)

    def filled_count(self) -> int:
        return sum(sum(row) for row in self.cells)


@dataclass(frozen=True)
class PartialFill:
    """Board contents where some cells may still be indeterminate."""

    cells: tuple[tuple[CellState, ...], ...]

    @classmethod
    def blank(cls, m: int, n: int) -> "PartialFill":
        return cls(tuple(tuple(CellState.INDETERMINATE for _ in range(n)) for _ in range(m)))

    @classmethod
    def of(cls, rows: Iterable[Iterable[CellState]]) -> "PartialFill":
        return cls(tuple(tuple(row) for row in rows))

    @property
    def m(self) -> int:
        return len(self.cells)

    @property
    def n(self) -> int:
        return len(self.cells[0])

    def with_cell(self, i: int, j: int, state: CellState) -> "PartialFill":
        rows = [list(row) for row in self.cells]
        rows[i][j] = state
        return PartialFill.of(rows)

    def is_complete(self) -> bool:
        return all(s is not CellState.INDETERMINATE for row in self.cells for s in row)

    def to_complete(self) -> CompleteFill:
        if not self.is_complete():
            raise ValueError("partial fill still has indeterminate cells")
        return CompleteFill.of(
            tuple(tuple(s is CellState.FILLED for s in row) for row in self.cells)
        )


def extract_line_runs(line: Sequence[bool]) -> Description:
    """Maximal runs of consecutive filled cells, in order of occurrence."""
    runs = []
    current = 0
    for cell in line:
        if cell:
            current += 1
        elif current:
            runs.append(current)
            current = 0
    if current:
        runs.append(current)
    return Description(tuple(runs))


def generate_board(m: int, n: int, rho: float, seed: int) -> CompleteFill:
    """Random board: each cell filled independently with probability ``rho``.

    Cells are visited in row-major order and the draw stream is fully
    determined by ``seed``, so equal arguments always produce equal boards.
    """
    if m < 1 or n < 1:
        raise ValueError("board dimensions must be at least 1x1")
    if not 0.0 <= rho <= 1.0:
        raise ValueError(f"density must lie in [0, 1], got {rho}")
    # Integer threshold keeps rho = 0 and rho = 1 exact.
    threshold = int(rho * 2.0**64)
    rng = SplitMix64(seed)
    return CompleteFill(
        tuple(tuple(rng.next_u64() < threshold for _ in range(n)) for _ in range(m))
    )


def extract_descriptions(fill: CompleteFill) -> Puzzle:
    """Read off all row and column descriptions of a complete fill.

    Rows are read left to right, columns top to bottom.  The resulting puzzle
    is consistent by construction: ``fill`` solves it.
    """
    return Puzzle(
        tuple(extract_line_runs(fill.row(i)) for i in range(fill.m)),
        tuple(extract_line_runs(fill.column(j)) for j in range(fill.n)),
    )


def verify_solution(puzzle: Puzzle, fill: CompleteFill) -> bool:
    """True iff every row and column of ``fill`` matches its description."""
    if puzzle.m != fill.m or puzzle.n != fill.n:
        raise ValueError(
            f"dimension mismatch: puzzle is {puzzle.m}x{puzzle.n}, fill is {fill.m}x{fill.n}"
        )
    for i in range(puzzle.m):
        if extract_line_runs(fill.row(i)) != puzzle.row_descriptions[i]:
            return False
    for j in range(puzzle.n):
        if extract_line_runs(fill.column(j)) != puzzle.col_descriptions[j]:
            return False
    return True
