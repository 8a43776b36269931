"""Nonogram inference laboratory.

Boards and their run descriptions, chain automata per line, CNF encodings,
an embedded CDCL solver with assumptions, per-cell inference testing, the
hardness-construction gadget suite, and the density-sweep experiment harness.
"""

__version__ = "0.1.0"

from .boards import (
    CellState,
    CompleteFill,
    Description,
    PartialFill,
    Puzzle,
    extract_descriptions,
    extract_line_runs,
    generate_board,
    verify_solution,
)

__all__ = [
    "CellState",
    "CompleteFill",
    "Description",
    "PartialFill",
    "Puzzle",
    "__version__",
    "extract_descriptions",
    "extract_line_runs",
    "generate_board",
    "verify_solution",
]
