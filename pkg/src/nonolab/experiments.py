"""Density-sweep harness: generate, encode, test inference, aggregate, emit.

One sweep walks a grid of board sizes and filled-cell densities.  For every
(size, density, board index) triple a board is generated from a seed derived
deterministically from the base seed, its puzzle is extracted and encoded,
and the per-cell filled-inference pass runs with one incremental solver
session.  Records aggregate into per-density means, with solver propagations
normalized per size against the maximum mean across densities.

Records are written to CSV as the system of record; SVG plots are derived
artifacts regenerable from the CSV.  Results are identical for identical
configs regardless of the parallelism level: workers own their boards and the
merge is ordered by (size, density, board index).
"""

from __future__ import annotations

import csv
import io
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .boards import extract_descriptions, generate_board
from .cnf import measure
from .encoding import encode_puzzle
from .inference import count_inferred_filled
from .rng import derive_seed
from .sat import BudgetExhausted

RECORD_COLUMNS = [
    "size",
    "density",
    "boardIndex",
    "seed",
    "filledCount",
    "inferredFilled",
    "proportionInferred",
    "totalPropagations",
    "baseClauseCount",
    "baseDistinctVariables",
    "wallTime",
    "budgetExhausted",
]

SUMMARY_COLUMNS = [
    "size",
    "density",
    "meanProportionInferred",
    "meanPropagations",
    "normalizedPropagations",
    "meanClauses",
    "meanDistinctVariables",
    "boardCount",
]


@dataclass(frozen=True)
class SweepConfig:
    sizes: tuple[int, ...]
    densities: tuple[float, ...]
    boards_per_density: int
    base_seed: int
    output_dir: Optional[Path] = None
    parallelism: int = 1
    conflict_budget: Optional[int] = None

    def __post_init__(self):
        if self.boards_per_density < 1:
            raise ValueError("boards_per_density must be at least 1")
        if any(not 0.0 <= d <= 1.0 for d in self.densities):
            raise ValueError("densities must lie in [0, 1]")
        if any(b <= a for a, b in zip(self.densities, self.densities[1:])):
            raise ValueError("densities must be strictly increasing")
        if self.parallelism < 1:
            raise ValueError("parallelism must be at least 1")


@dataclass(frozen=True)
class SweepRecord:
    size: int
    density: float
    board_index: int
    seed: int
    filled_count: int
    inferred_filled: int
    proportion_inferred: float
    total_propagations: int
    base_clause_count: int
    base_distinct_variables: int
    wall_time: float
    budget_exhausted: bool = False

    def csv_row(self) -> list[str]:
        return [
            str(self.size),
            repr(self.density),
            str(self.board_index),
            str(self.seed),
            str(self.filled_count),
            str(self.inferred_filled),
            repr(self.proportion_inferred),
            str(self.total_propagations),
            str(self.base_clause_count),
            str(self.base_distinct_variables),
            f"{self.wall_time:.6f}",
            str(int(self.budget_exhausted)),
        ]


@dataclass(frozen=True)
class DensitySummary:
    size: int
    density: float
    mean_proportion_inferred: float
    mean_propagations: float
    normalized_propagations: float
    mean_clauses: float
    mean_distinct_variables: float
    board_count: int

    def csv_row(self) -> list[str]:
        return [
            str(self.size),
            repr(self.density),
            repr(self.mean_proportion_inferred),
            repr(self.mean_propagations),
            repr(self.normalized_propagations),
            repr(self.mean_clauses),
            repr(self.mean_distinct_variables),
            str(self.board_count),
        ]


def board_seed(base_seed: int, size: int, density_index: int, board_index: int) -> int:
    """Per-board PRNG seed; pinned so sweeps are reproducible and parallel-safe."""
    return derive_seed(base_seed, size, density_index, board_index)


def run_board(
    size: int,
    density: float,
    density_index: int,
    board_index: int,
    base_seed: int,
    conflict_budget: Optional[int] = None,
) -> SweepRecord:
    """Generate, encode, and inference-test a single board."""
    started = time.perf_counter()
    seed = board_seed(base_seed, size, density_index, board_index)
    fill = generate_board(size, size, density, seed)
    puzzle = extract_descriptions(fill)
    formula, _ = encode_puzzle(puzzle)
    clause_count, _, distinct = measure(formula)
    board_id = f"s{size}-d{density_index}-b{board_index}"
    try:
        report = count_inferred_filled(puzzle, fill, board_id, conflict_budget)
        exhausted = False
    except BudgetExhausted:
        report = None
        exhausted = True
    elapsed = time.perf_counter() - started
    return SweepRecord(
        size=size,
        density=density,
        board_index=board_index,
        seed=seed,
        filled_count=fill.filled_count(),
        inferred_filled=report.inferred_filled if report else 0,
        proportion_inferred=report.proportion_inferred if report else 0.0,
        total_propagations=report.total_propagations if report else 0,
        base_clause_count=clause_count,
        base_distinct_variables=distinct,
        wall_time=elapsed,
        budget_exhausted=exhausted,
    )


def _run_board_task(args: tuple) -> tuple[tuple[int, int, int], SweepRecord]:
    size_index, size, density_index, density, board_index, base_seed, budget = args
    record = run_board(size, density, density_index, board_index, base_seed, budget)
    return (size_index, density_index, board_index), record


def run_sweep(cfg: SweepConfig, progress: bool = False) -> list[SweepRecord]:
    """All boards of the config, ordered by (size, density, board index)."""
    tasks = [
        (si, size, di, density, bi, cfg.base_seed, cfg.conflict_budget)
        for si, size in enumerate(cfg.sizes)
        for di, density in enumerate(cfg.densities)
        for bi in range(cfg.boards_per_density)
    ]
    results: dict[tuple[int, int, int], SweepRecord] = {}
    if cfg.parallelism == 1:
        for i, task in enumerate(tasks):
            key, record = _run_board_task(task)
            results[key] = record
            if progress and (i + 1) % 50 == 0:
                print(f"  {i + 1}/{len(tasks)} boards done", flush=True)
    else:
        with ProcessPoolExecutor(max_workers=cfg.parallelism) as pool:
            for i, (key, record) in enumerate(
                pool.map(_run_board_task, tasks, chunksize=4)
            ):
                results[key] = record
                if progress and (i + 1) % 50 == 0:
                    print(f"  {i + 1}/{len(tasks)} boards done", flush=True)
    return [results[key] for key in sorted(results)]


def summarize(records: Sequence[SweepRecord]) -> list[DensitySummary]:
    """Per-(size, density) means; budget-exhausted rows are excluded.

    Propagations are normalized per size by the maximum mean over densities;
    on a tie the lower density is the one reported as attaining 1.0.
    """
    if not records:
        raise ValueError("cannot summarize an empty record list")
    groups: dict[tuple[int, float], list[SweepRecord]] = {}
    for record in records:
        groups.setdefault((record.size, record.density), []).append(record)
    raw: list[dict] = []
    for (size, density) in sorted(groups):
        rows = [r for r in groups[(size, density)] if not r.budget_exhausted]
        if not rows:
            continue
        count = len(rows)
        raw.append(
            {
                "size": size,
                "density": density,
                "proportion": sum(r.proportion_inferred for r in rows) / count,
                "propagations": sum(r.total_propagations for r in rows) / count,
                "clauses": sum(r.base_clause_count for r in rows) / count,
                "distinct": sum(r.base_distinct_variables for r in rows) / count,
                "count": count,
            }
        )
    max_by_size: dict[int, float] = {}
    for row in raw:
        current = max_by_size.get(row["size"], 0.0)
        if row["propagations"] > current:
            max_by_size[row["size"]] = row["propagations"]
    summaries = []
    for row in raw:
        peak = max_by_size.get(row["size"], 0.0)
        normalized = row["propagations"] / peak if peak > 0 else 1.0
        summaries.append(
            DensitySummary(
                size=row["size"],
                density=row["density"],
                mean_proportion_inferred=row["proportion"],
                mean_propagations=row["propagations"],
                normalized_propagations=normalized,
                mean_clauses=row["clauses"],
                mean_distinct_variables=row["distinct"],
                board_count=row["count"],
            )
        )
    return summaries


@dataclass(frozen=True)
class SizeStudyPoint:
    size: int
    density: float
    mean_clauses: float
    mean_total_literals: float
    mean_distinct_variables: float
    board_count: int


def formula_size_study(
    size: int,
    densities: Sequence[float],
    boards_per_density: int,
    base_seed: int,
) -> list[SizeStudyPoint]:
    """Encode-only study: average formula sizes per density, no solving.

    Both literal-occurrence and distinct-variable counts are recorded since
    either reading of "variables" may be wanted.
    """
    points = []
    for di, density in enumerate(densities):
        totals = [0, 0, 0]
        for bi in range(boards_per_density):
            seed = board_seed(base_seed, size, di, bi)
            fill = generate_board(size, size, density, seed)
            formula, _ = encode_puzzle(extract_descriptions(fill))
            clauses, literals, distinct = measure(formula)
            totals[0] += clauses
            totals[1] += literals
            totals[2] += distinct
        points.append(
            SizeStudyPoint(
                size=size,
                density=density,
                mean_clauses=totals[0] / boards_per_density,
                mean_total_literals=totals[1] / boards_per_density,
                mean_distinct_variables=totals[2] / boards_per_density,
                board_count=boards_per_density,
            )
        )
    return points


def records_to_csv(records: Sequence[SweepRecord]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(RECORD_COLUMNS)
    for record in records:
        writer.writerow(record.csv_row())
    return out.getvalue()


def summaries_to_csv(summaries: Sequence[DensitySummary]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(SUMMARY_COLUMNS)
    for summary in summaries:
        writer.writerow(summary.csv_row())
    return out.getvalue()


def read_records_csv(text: str) -> list[SweepRecord]:
    reader = csv.DictReader(io.StringIO(text))
    records = []
    for row in reader:
        records.append(
            SweepRecord(
                size=int(row["size"]),
                density=float(row["density"]),
                board_index=int(row["boardIndex"]),
                seed=int(row["seed"]),
                filled_count=int(row["filledCount"]),
                inferred_filled=int(row["inferredFilled"]),
                proportion_inferred=float(row["proportionInferred"]),
                total_propagations=int(row["totalPropagations"]),
                base_clause_count=int(row["baseClauseCount"]),
                base_distinct_variables=int(row["baseDistinctVariables"]),
                wall_time=float(row["wallTime"]),
                budget_exhausted=bool(int(row.get("budgetExhausted", "0"))),
            )
        )
    return records


def emit_outputs(
    records: Sequence[SweepRecord],
    summaries: Sequence[DensitySummary],
    output_dir: Path,
) -> list[Path]:
    """Write records.csv, summary.csv, and the three SVG plots.

    With no records only header-only CSVs appear and a warning is issued.
    """
    from . import plotting

    output_dir = Path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    written = []
    records_path = output_dir / "records.csv"
    records_path.write_text(records_to_csv(records))
    written.append(records_path)
    summary_path = output_dir / "summary.csv"
    header_only = ",".join(SUMMARY_COLUMNS) + "\n"
    summary_path.write_text(summaries_to_csv(summaries) if summaries else header_only)
    written.append(summary_path)
    if not records:
        warnings.warn("no records to plot; skipping SVG emission")
        return written
    written.append(plotting.plot_transition(summaries, output_dir / "transition.svg"))
    written.append(plotting.plot_difficulty(summaries, output_dir / "difficulty.svg"))
    written.append(plotting.plot_sizes(summaries, output_dir / "sizes.svg"))
    return written
