"""Request/response models and handlers shared by the HTTP API and the CLI.

Every interactive operation is a pure function from a pydantic request to a
pydantic response; the FastAPI app and the command line are both thin clients
of this layer.  Documents travel in their text formats (puzzle text/JSON,
fill text, DIMACS) so responses can be written straight to files.
"""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, Field

from . import automata, cnf, encoding, formats, gadgets, inference, sat
from .boards import (
    CellState,
    Description,
    extract_descriptions,
    generate_board,
    verify_solution,
)


class ServiceError(ValueError):
    """Invalid request content; maps to HTTP 422/400 in the API."""


# ------------------------------------------------------------------ generate


class GenerateRequest(BaseModel):
    rows: int = Field(ge=1)
    cols: int = Field(ge=1)
    density: float = Field(ge=0.0, le=1.0)
    seed: int = Field(ge=0, lt=2**64)


class GenerateResponse(BaseModel):
    fill_text: str
    filled_count: int
    puzzle_text: str


def handle_generate(req: GenerateRequest) -> GenerateResponse:
    fill = generate_board(req.rows, req.cols, req.density, req.seed)
    puzzle = extract_descriptions(fill)
    return GenerateResponse(
        fill_text=formats.fill_to_text(fill),
        filled_count=fill.filled_count(),
        puzzle_text=formats.puzzle_to_text(puzzle),
    )


# ------------------------------------------------------------------- extract


class ExtractRequest(BaseModel):
    fill_text: str


class ExtractResponse(BaseModel):
    puzzle_text: str
    puzzle_json: str


def handle_extract(req: ExtractRequest) -> ExtractResponse:
    try:
        fill = formats.fill_from_text(req.fill_text)
    except formats.FormatError as exc:
        raise ServiceError(str(exc)) from exc
    puzzle = extract_descriptions(fill)
    return ExtractResponse(
        puzzle_text=formats.puzzle_to_text(puzzle),
        puzzle_json=formats.puzzle_to_json(puzzle),
    )


# -------------------------------------------------------------------- verify


class VerifyRequest(BaseModel):
    puzzle_text: str
    fill_text: str


class VerifyResponse(BaseModel):
    valid: bool


def handle_verify(req: VerifyRequest) -> VerifyResponse:
    try:
        puzzle = formats.load_puzzle(req.puzzle_text)
        fill = formats.fill_from_text(req.fill_text)
        return VerifyResponse(valid=verify_solution(puzzle, fill))
    except (formats.FormatError, ValueError) as exc:
        raise ServiceError(str(exc)) from exc


# ----------------------------------------------------------------- automaton


class AutomatonRequest(BaseModel):
    runs: list[int]


class AutomatonResponse(BaseModel):
    state_count: int
    accepting: list[int]
    dot: str


def handle_automaton(req: AutomatonRequest) -> AutomatonResponse:
    try:
        desc = Description.of(req.runs)
    except ValueError as exc:
        raise ServiceError(str(exc)) from exc
    automaton = automata.build_automaton(desc)
    return AutomatonResponse(
        state_count=automaton.state_count,
        accepting=sorted(automaton.accepting),
        dot=automata.to_dot(automaton),
    )


# -------------------------------------------------------------------- encode


class EncodeRequest(BaseModel):
    puzzle_text: str
    report_sizes: bool = False


class LineSizeReport(BaseModel):
    line: str
    measured_clauses: int
    predicted_clauses: int
    predicted_total_variables: int
    predicted_distinct_variables: int


class EncodeResponse(BaseModel):
    dimacs: str
    variable_count: int
    clause_count: int
    literal_occurrences: int
    distinct_variables: int
    line_sizes: Optional[list[LineSizeReport]] = None


def handle_encode(req: EncodeRequest) -> EncodeResponse:
    try:
        puzzle = formats.load_puzzle(req.puzzle_text)
    except formats.FormatError as exc:
        raise ServiceError(str(exc)) from exc
    formula, _ = encoding.encode_puzzle(puzzle)
    clauses, literals, distinct = cnf.measure(formula)
    line_sizes = None
    if req.report_sizes:
        line_sizes = []
        for kind, descs, length in (
            ("row", puzzle.row_descriptions, puzzle.n),
            ("col", puzzle.col_descriptions, puzzle.m),
        ):
            for index, desc in enumerate(descs):
                line_formula, _ = encoding.encode_line_formula(desc, length)
                prediction = encoding.predict_size(
                    length, desc.run_count, desc.filled_total
                )
                line_sizes.append(
                    LineSizeReport(
                        line=f"{kind} {index}",
                        measured_clauses=line_formula.clause_count,
                        predicted_clauses=prediction.clauses,
                        predicted_total_variables=prediction.total_variables,
                        predicted_distinct_variables=prediction.distinct_variables,
                    )
                )
    return EncodeResponse(
        dimacs=cnf.to_dimacs(formula),
        variable_count=formula.variable_count,
        clause_count=clauses,
        literal_occurrences=literals,
        distinct_variables=distinct,
        line_sizes=line_sizes,
    )


# -------------------------------------------------------------- predict-size


class PredictSizeRequest(BaseModel):
    line_length: int
    run_count: int
    filled_total: int


class PredictSizeResponse(BaseModel):
    clauses: int
    total_variables: int
    distinct_variables: int


def handle_predict_size(req: PredictSizeRequest) -> PredictSizeResponse:
    try:
        prediction = encoding.predict_size(
            req.line_length, req.run_count, req.filled_total
        )
    except encoding.EncodingError as exc:
        raise ServiceError(str(exc)) from exc
    return PredictSizeResponse(
        clauses=prediction.clauses,
        total_variables=prediction.total_variables,
        distinct_variables=prediction.distinct_variables,
    )


# --------------------------------------------------------------------- solve


class SolveRequest(BaseModel):
    dimacs: str
    assumptions: list[int] = Field(default_factory=list)
    conflict_budget: Optional[int] = None


class SolveResponse(BaseModel):
    satisfiable: Optional[bool]  # None when the budget ran out
    model: Optional[list[int]] = None
    propagations: int
    decisions: int
    conflicts: int


def handle_solve(req: SolveRequest) -> SolveResponse:
    try:
        formula = cnf.from_dimacs(req.dimacs)
    except cnf.CnfError as exc:
        raise ServiceError(str(exc)) from exc
    try:
        outcome, stats = sat.solve(formula, req.assumptions, req.conflict_budget)
    except ValueError as exc:
        raise ServiceError(str(exc)) from exc
    except sat.BudgetExhausted as exc:
        return SolveResponse(
            satisfiable=None,
            propagations=exc.stats.propagations,
            decisions=exc.stats.decisions,
            conflicts=exc.stats.conflicts,
        )
    return SolveResponse(
        satisfiable=outcome.satisfiable,
        model=outcome.model_list() if outcome.satisfiable else None,
        propagations=stats.propagations,
        decisions=stats.decisions,
        conflicts=stats.conflicts,
    )


# --------------------------------------------------------------------- infer


class InferRequest(BaseModel):
    puzzle_text: str
    fill_text: Optional[str] = None  # generating fill: enables the filled-count report
    fixed_text: Optional[str] = None  # partial fill constraining the queries


class InferResponse(BaseModel):
    annotation: str  # m lines of n characters: F / E / ?
    inferable_filled: int
    inferable_empty: int
    queries_run: int
    total_propagations: int
    report_filled_count: Optional[int] = None
    report_inferred_filled: Optional[int] = None
    report_proportion: Optional[float] = None


_ANNOTATION = {CellState.FILLED: "F", CellState.EMPTY: "E", CellState.INDETERMINATE: "?"}


def handle_infer(req: InferRequest) -> InferResponse:
    try:
        puzzle = formats.load_puzzle(req.puzzle_text)
        fixed = (
            formats.partial_fill_from_text(req.fixed_text) if req.fixed_text else None
        )
    except formats.FormatError as exc:
        raise ServiceError(str(exc)) from exc
    try:
        grid, queries, props = inference.infer_cell_map(puzzle, fixed)
    except inference.InconsistentBoardError as exc:
        raise ServiceError(str(exc)) from exc
    annotation = "\n".join(
        "".join(_ANNOTATION[state] for state in row) for row in grid
    ) + "\n"
    response = InferResponse(
        annotation=annotation,
        inferable_filled=sum(1 for row in grid for s in row if s is CellState.FILLED),
        inferable_empty=sum(1 for row in grid for s in row if s is CellState.EMPTY),
        queries_run=queries,
        total_propagations=props,
    )
    if req.fill_text:
        try:
            fill = formats.fill_from_text(req.fill_text)
        except formats.FormatError as exc:
            raise ServiceError(str(exc)) from exc
        try:
            report = inference.count_inferred_filled(puzzle, fill)
        except ValueError as exc:
            raise ServiceError(str(exc)) from exc
        response.report_filled_count = report.filled_cell_count
        response.report_inferred_filled = report.inferred_filled
        response.report_proportion = report.proportion_inferred
    return response


# ------------------------------------------------------------------- gadgets


class GadgetCheckModel(BaseModel):
    name: str
    status: str
    detail: str


class GadgetReportModel(BaseModel):
    gadget: str
    solution_count: int
    exhaustive: bool
    all_passed: bool
    checks: list[GadgetCheckModel]


class GadgetVerifyResponse(BaseModel):
    reports: list[GadgetReportModel]
    all_passed: bool


def handle_gadget_verify(name: Optional[str] = None) -> GadgetVerifyResponse:
    if name is not None:
        try:
            specs = [gadgets.load_gadget(name)]
        except gadgets.GadgetError as exc:
            raise ServiceError(str(exc)) from exc
    else:
        specs = gadgets.load_gadgets()
    reports = []
    for spec in specs:
        report = gadgets.verify_gadget_properties(spec)
        reports.append(
            GadgetReportModel(
                gadget=report.gadget,
                solution_count=report.solution_count,
                exhaustive=report.exhaustive,
                all_passed=report.all_passed(),
                checks=[
                    GadgetCheckModel(name=c.name, status=c.status, detail=c.detail)
                    for c in report.checks
                ],
            )
        )
    return GadgetVerifyResponse(
        reports=reports, all_passed=all(r.all_passed for r in reports)
    )
