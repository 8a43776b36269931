"""Command line: thin client over the service layer.

Interactive commands mirror the HTTP endpoints one-to-one.  The batch
experiment commands (sweep, size-study) run in-process because they take
hours and write local files; everything else marshals through the same
request/response models the API uses.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from . import service
from .experiments import (
    SweepConfig,
    emit_outputs,
    formula_size_study,
    run_sweep,
    summarize,
)

OUTPUT_DIR_ENV = "NONOLAB_OUT"


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _fail(exc: Exception) -> None:
    raise click.ClickException(str(exc))


@click.group()
def main():
    """Nonogram inference laboratory."""


@main.command()
@click.option("--rows", type=int, required=True)
@click.option("--cols", type=int, required=True)
@click.option("--density", type=float, required=True)
@click.option("--seed", type=int, required=True)
@click.option("--out", type=click.Path(), default=None, help="Write the fill here instead of stdout.")
@click.option("--puzzle-out", type=click.Path(), default=None, help="Also write the extracted puzzle.")
def generate(rows, cols, density, seed, out, puzzle_out):
    """Generate a random board at the given filled-cell density."""
    try:
        resp = service.handle_generate(
            service.GenerateRequest(rows=rows, cols=cols, density=density, seed=seed)
        )
    except (service.ServiceError, ValueError) as exc:
        _fail(exc)
    if out:
        Path(out).write_text(resp.fill_text)
        click.echo(f"wrote {out} ({resp.filled_count} filled cells)")
    else:
        click.echo(resp.fill_text, nl=False)
    if puzzle_out:
        Path(puzzle_out).write_text(resp.puzzle_text)
        click.echo(f"wrote {puzzle_out}")


@main.command()
@click.argument("fill", type=str)
@click.option("--json", "as_json", is_flag=True, help="Emit the JSON document instead of text.")
def extract(fill, as_json):
    """Extract row and column descriptions from a fill ('-' for stdin)."""
    try:
        resp = service.handle_extract(service.ExtractRequest(fill_text=_read(fill)))
    except (service.ServiceError, OSError) as exc:
        _fail(exc)
    click.echo(resp.puzzle_json if as_json else resp.puzzle_text, nl=False)


@main.command()
@click.argument("puzzle", type=str)
@click.argument("fill", type=str)
def verify(puzzle, fill):
    """Check whether a fill solves a puzzle; exit code 1 when it does not."""
    try:
        resp = service.handle_verify(
            service.VerifyRequest(puzzle_text=_read(puzzle), fill_text=_read(fill))
        )
    except (service.ServiceError, OSError) as exc:
        _fail(exc)
    click.echo("valid" if resp.valid else "invalid")
    if not resp.valid:
        sys.exit(1)


@main.command()
@click.option("--desc", required=True, help="Run lengths, e.g. \"2 1\" (empty string for 0*).")
@click.option("--dot", "want_dot", is_flag=True, help="Emit the DOT graph.")
def automaton(desc, want_dot):
    """Build the chain automaton for one description."""
    try:
        runs = [int(tok) for tok in desc.split()]
        resp = service.handle_automaton(service.AutomatonRequest(runs=runs))
    except (service.ServiceError, ValueError) as exc:
        _fail(exc)
    click.echo(f"states: {resp.state_count}")
    click.echo(f"accepting: {' '.join(str(q) for q in resp.accepting)}")
    if want_dot:
        click.echo(resp.dot, nl=False)


@main.command()
@click.option("--puzzle", "puzzle_path", required=True, type=str)
@click.option("--dimacs", "dimacs_out", type=click.Path(), default=None)
@click.option("--report-sizes", is_flag=True)
def encode(puzzle_path, dimacs_out, report_sizes):
    """Encode a puzzle as CNF; optionally write DIMACS and per-line sizes."""
    try:
        resp = service.handle_encode(
            service.EncodeRequest(puzzle_text=_read(puzzle_path), report_sizes=report_sizes)
        )
    except (service.ServiceError, OSError) as exc:
        _fail(exc)
    click.echo(
        f"variables {resp.variable_count} clauses {resp.clause_count} "
        f"literal-occurrences {resp.literal_occurrences} distinct {resp.distinct_variables}"
    )
    if report_sizes and resp.line_sizes:
        for line in resp.line_sizes:
            click.echo(
                f"{line.line}: measured {line.measured_clauses} clauses, predicted "
                f"{line.predicted_clauses} clauses / {line.predicted_total_variables} "
                f"total vars / {line.predicted_distinct_variables} distinct vars"
            )
    if dimacs_out:
        Path(dimacs_out).write_text(resp.dimacs)
        click.echo(f"wrote {dimacs_out}")


@main.command()
@click.argument("dimacs", type=str)
@click.option("--assume", default="", help="Space-separated assumption literals.")
@click.option("--budget", type=int, default=None, help="Conflict budget.")
def solve(dimacs, assume, budget):
    """Solve a DIMACS file, printing outcome, model, and statistics."""
    try:
        assumptions = [int(tok) for tok in assume.split()] if assume.strip() else []
        resp = service.handle_solve(
            service.SolveRequest(
                dimacs=_read(dimacs), assumptions=assumptions, conflict_budget=budget
            )
        )
    except (service.ServiceError, OSError, ValueError) as exc:
        _fail(exc)
    if resp.satisfiable is None:
        click.echo("s UNKNOWN (conflict budget exhausted)")
    elif resp.satisfiable:
        click.echo("s SATISFIABLE")
        lits = resp.model or []
        for start in range(0, len(lits), 12):
            chunk = lits[start : start + 12]
            terminator = " 0" if start + 12 >= len(lits) else ""
            click.echo("v " + " ".join(str(l) for l in chunk) + terminator)
    else:
        click.echo("s UNSATISFIABLE")
    click.echo(f"c propagations {resp.propagations}")
    click.echo(f"c decisions {resp.decisions}")
    click.echo(f"c conflicts {resp.conflicts}")
    if resp.satisfiable is False:
        sys.exit(20)
    if resp.satisfiable:
        sys.exit(10)


@main.command()
@click.option("--puzzle", "puzzle_path", required=True, type=str)
@click.option("--fill", "fill_path", type=str, default=None,
              help="Generating fill; enables the filled-inference report.")
@click.option("--fixed", "fixed_path", type=str, default=None,
              help="Partial fill ('#', '.', '?') constraining the queries.")
def infer(puzzle_path, fill_path, fixed_path):
    """Per-cell inference: F = forced filled, E = forced empty, ? = varies."""
    try:
        resp = service.handle_infer(
            service.InferRequest(
                puzzle_text=_read(puzzle_path),
                fill_text=_read(fill_path) if fill_path else None,
                fixed_text=_read(fixed_path) if fixed_path else None,
            )
        )
    except (service.ServiceError, OSError) as exc:
        _fail(exc)
    click.echo(resp.annotation, nl=False)
    click.echo(
        f"inferable: {resp.inferable_filled} filled, {resp.inferable_empty} empty "
        f"({resp.queries_run} queries, {resp.total_propagations} propagations)"
    )
    if resp.report_filled_count is not None:
        click.echo(
            f"filled-inference report: {resp.report_inferred_filled} of "
            f"{resp.report_filled_count} filled cells inferred "
            f"(proportion {resp.report_proportion:.4f})"
        )


@main.group()
def gadgets():
    """Hardness-construction gadget tools."""


@gadgets.command("verify")
@click.option("--gadget", "name", default=None, help="Check a single gadget by name.")
def gadgets_verify(name):
    """Verify gadget properties; exit code 1 on any failure."""
    try:
        resp = service.handle_gadget_verify(name)
    except service.ServiceError as exc:
        _fail(exc)
    for report in resp.reports:
        flag = "ok" if report.all_passed else "FAIL"
        click.echo(
            f"{report.gadget:10s} {flag:4s} solutions={report.solution_count}"
            f"{'' if report.exhaustive else ' (limit hit)'}"
        )
        for check in report.checks:
            mark = {"pass": "+", "fail": "!", "skipped": "~"}[check.status]
            detail = f"  {check.detail}" if check.detail else ""
            click.echo(f"  {mark} {check.name}{detail}")
    if not resp.all_passed:
        sys.exit(1)


def _parse_density_grid(spec: str) -> tuple[float, ...]:
    """Either 'start:stop:step' or a comma-separated list."""
    if ":" in spec:
        start_s, stop_s, step_s = spec.split(":")
        start, stop, step = float(start_s), float(stop_s), float(step_s)
        if step <= 0:
            raise ValueError("density step must be positive")
        densities = []
        k = 0
        while True:
            value = round(start + k * step, 9)
            if value > stop + 1e-9:
                break
            densities.append(value)
            k += 1
        return tuple(densities)
    return tuple(float(tok) for tok in spec.split(","))


def _resolve_out(out: str | None) -> Path:
    import os

    env = os.environ.get(OUTPUT_DIR_ENV)
    if env:
        return Path(env)
    if out is None:
        raise click.ClickException(f"--out is required (or set {OUTPUT_DIR_ENV})")
    return Path(out)


@main.command()
@click.option("--sizes", default="15,20,25", help="Comma-separated board sizes (m=n).")
@click.option("--densities", default="0.03:0.99:0.03", help="start:stop:step or a list.")
@click.option("--boards", type=int, default=250, help="Boards per density.")
@click.option("--seed", type=int, default=0)
@click.option("--out", type=click.Path(), default=None)
@click.option("--jobs", type=int, default=1, help="Worker processes.")
@click.option("--budget", type=int, default=None, help="Conflict budget per query.")
def sweep(sizes, densities, boards, seed, out, jobs, budget):
    """Run the full inference density sweep and write CSVs and plots."""
    try:
        cfg = SweepConfig(
            sizes=tuple(int(tok) for tok in sizes.split(",")),
            densities=_parse_density_grid(densities),
            boards_per_density=boards,
            base_seed=seed,
            output_dir=_resolve_out(out),
            parallelism=jobs,
            conflict_budget=budget,
        )
    except ValueError as exc:
        _fail(exc)
    total = len(cfg.sizes) * len(cfg.densities) * cfg.boards_per_density
    click.echo(f"sweep: {total} boards across {len(cfg.densities)} densities")
    records = run_sweep(cfg, progress=True)
    summaries = summarize(records)
    written = emit_outputs(records, summaries, cfg.output_dir)
    for path in written:
        click.echo(f"wrote {path}")


@main.command("size-study")
@click.option("--size", type=int, default=40)
@click.option("--densities", default="0.0:1.0:0.05")
@click.option("--boards", type=int, default=500)
@click.option("--seed", type=int, default=0)
@click.option("--out", type=click.Path(), default=None)
def size_study(size, densities, boards, seed, out):
    """Encode-only formula size study over a density grid (no solving)."""
    from . import plotting

    try:
        grid = _parse_density_grid(densities)
        out_dir = _resolve_out(out)
    except ValueError as exc:
        _fail(exc)
    points = formula_size_study(size, grid, boards, seed)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / "size_study.csv"
    lines = ["size,density,meanClauses,meanTotalLiterals,meanDistinctVariables,boardCount"]
    for p in points:
        lines.append(
            f"{p.size},{p.density!r},{p.mean_clauses!r},{p.mean_total_literals!r},"
            f"{p.mean_distinct_variables!r},{p.board_count}"
        )
    csv_path.write_text("\n".join(lines) + "\n")
    click.echo(f"wrote {csv_path}")
    svg_path = plotting.plot_size_study(points, out_dir / "size_study.svg")
    click.echo(f"wrote {svg_path}")


@main.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=8000)
def serve(host, port):
    """Run the HTTP API."""
    import uvicorn

    uvicorn.run("nonolab.api:app", host=host, port=port)


if __name__ == "__main__":
    main()
