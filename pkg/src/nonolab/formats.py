"""Text and JSON serialization for puzzles and fills.

Puzzle text format::

    m n
    <m row lines: space-separated run lengths, blank line = empty description>
    <n column lines, same convention>

Fill text format: m lines of n characters, '#' filled and '.' empty.

The JSON equivalent carries keys ``m``, ``n``, ``rows``, ``cols`` with the
descriptions as lists of integers.
"""

from __future__ import annotations

import json

from .boards import CellState, CompleteFill, Description, PartialFill, Puzzle


class FormatError(ValueError):
    """Malformed puzzle or fill document."""


def puzzle_to_text(puzzle: Puzzle) -> str:
    lines = [f"{puzzle.m} {puzzle.n}"]
    for d in puzzle.row_descriptions:
        lines.append(" ".join(str(r) for r in d.runs))
    for d in puzzle.col_descriptions:
        lines.append(" ".join(str(r) for r in d.runs))
    return "\n".join(lines) + "\n"


def _parse_description(line: str, where: str) -> Description:
    parts = line.split()
    try:
        runs = tuple(int(p) for p in parts)
    except ValueError as exc:
        raise FormatError(f"{where}: expected integers, got {line!r}") from exc
    if any(r < 1 for r in runs):
        raise FormatError(f"{where}: run lengths must be positive, got {line!r}")
    return Description(runs)


def puzzle_from_text(text: str) -> Puzzle:
    lines = text.split("\n")
    if not lines or not lines[0].split():
        raise FormatError("missing 'm n' header line")
    header = lines[0].split()
    if len(header) != 2:
        raise FormatError(f"header must be 'm n', got {lines[0]!r}")
    try:
        m, n = int(header[0]), int(header[1])
    except ValueError as exc:
        raise FormatError(f"header must be two integers, got {lines[0]!r}") from exc
    if m < 1 or n < 1:
        raise FormatError(f"dimensions must be positive, got {m}x{n}")
    body = lines[1:]
    # Trailing blank descriptions may be cut off by editors; pad them back.
    while len(body) < m + n:
        body.append("")
    rows = [_parse_description(body[i], f"row {i}") for i in range(m)]
    cols = [_parse_description(body[m + j], f"column {j}") for j in range(n)]
    extra = [ln for ln in body[m + n :] if ln.strip()]
    if extra:
        raise FormatError(f"unexpected content after descriptions: {extra[0]!r}")
    try:
        return Puzzle(tuple(rows), tuple(cols))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def puzzle_to_json(puzzle: Puzzle) -> str:
    doc = {
        "m": puzzle.m,
        "n": puzzle.n,
        "rows": [list(d.runs) for d in puzzle.row_descriptions],
        "cols": [list(d.runs) for d in puzzle.col_descriptions],
    }
    return json.dumps(doc, indent=2) + "\n"


def puzzle_from_json(text: str) -> Puzzle:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    for key in ("m", "n", "rows", "cols"):
        if key not in doc:
            raise FormatError(f"missing key {key!r}")
    if len(doc["rows"]) != doc["m"] or len(doc["cols"]) != doc["n"]:
        raise FormatError("rows/cols lengths do not match m/n")
    try:
        return Puzzle.of(doc["rows"], doc["cols"])
    except (TypeError, ValueError) as exc:
        raise FormatError(str(exc)) from exc


def load_puzzle(text: str) -> Puzzle:
    """Parse either format; JSON documents start with '{'."""
    if text.lstrip().startswith("{"):
        return puzzle_from_json(text)
    return puzzle_from_text(text)


def fill_to_text(fill: CompleteFill) -> str:
    return "\n".join("".join("#" if c else "." for c in row) for row in fill.cells) + "\n"


def fill_from_text(text: str) -> CompleteFill:
    rows = [line for line in text.split("\n") if line.strip()]
    if not rows:
        raise FormatError("empty fill document")
    grid = []
    for i, line in enumerate(rows):
        row = []
        for ch in line:
            if ch == "#":
                row.append(True)
            elif ch == ".":
                row.append(False)
            else:
                raise FormatError(f"fill row {i}: unexpected character {ch!r}")
        grid.append(tuple(row))
    if any(len(r) != len(grid[0]) for r in grid):
        raise FormatError("fill rows have unequal lengths")
    return CompleteFill(tuple(grid))


def partial_fill_to_text(fill: PartialFill) -> str:
    return "\n".join("".join(s.value for s in row) for row in fill.cells) + "\n"


def partial_fill_from_text(text: str) -> PartialFill:
    rows = [line for line in text.split("\n") if line.strip()]
    if not rows:
        raise FormatError("empty fill document")
    by_char = {s.value: s for s in CellState}
    grid = []
    for i, line in enumerate(rows):
        try:
            grid.append(tuple(by_char[ch] for ch in line))
        except KeyError as exc:
            raise FormatError(f"fill row {i}: unexpected character {exc.args[0]!r}") from exc
    if any(len(r) != len(grid[0]) for r in grid):
        raise FormatError("fill rows have unequal lengths")
    return PartialFill(tuple(grid))
