import pytest

from nonolab.boards import (
    CellState,
    CompleteFill,
    Description,
    PartialFill,
    Puzzle,
    extract_descriptions,
    generate_board,
)
from nonolab.encoding import VarMap, encode_line_formula, encode_puzzle
from nonolab.inference import (
    InconsistentBoardError,
    brute_force_inference,
    count_inferred_filled,
    decide_inference,
    decide_inference_session,
    enumerate_solutions,
    infer_cell_map,
    is_inferable,
)
from nonolab.sat import Solver


def line_only_session(runs, n):
    """Session over a single row constraint (columns unconstrained)."""
    formula, _ = encode_line_formula(Description.of(runs), n)
    var_map = VarMap(1, n, (), ())
    return Solver(formula), var_map


class TestIsInferable:
    def test_unique_solution_every_cell_inferable(self):
        puzzle = Puzzle.of([[3]], [[1], [1], [1]])
        formula, var_map = encode_puzzle(puzzle)
        solver = Solver(formula)
        for j in range(3):
            assert is_inferable(solver, var_map, (0, j), CellState.FILLED)
            with pytest.raises(ValueError, match="already assigned"):
                fixed = PartialFill.blank(1, 3).with_cell(0, j, CellState.FILLED)
                is_inferable(solver, var_map, (0, j), CellState.FILLED, fixed)

    def test_row_only_line_nothing_inferable(self):
        # single row [1] over two cells, column constraints absent
        solver, var_map = line_only_session([1], 2)
        for j in range(2):
            for polarity in (CellState.FILLED, CellState.EMPTY):
                assert not is_inferable(solver, var_map, (0, j), polarity)

    def test_permutation_puzzle_nothing_inferable(self):
        puzzle = Puzzle.of([[1], [1]], [[1], [1]])
        formula, var_map = encode_puzzle(puzzle)
        solver = Solver(formula)
        for i in range(2):
            for j in range(2):
                for polarity in (CellState.FILLED, CellState.EMPTY):
                    assert not is_inferable(solver, var_map, (i, j), polarity)

    def test_inconsistent_base_raises(self):
        puzzle = Puzzle.of([[1]], [[]])
        formula, var_map = encode_puzzle(puzzle)
        with pytest.raises(InconsistentBoardError):
            is_inferable(Solver(formula), var_map, (0, 0), CellState.FILLED)

    def test_fixed_cells_narrow_the_solution_set(self):
        solver, var_map = line_only_session([1], 2)
        fixed = PartialFill.blank(1, 2).with_cell(0, 0, CellState.FILLED)
        assert is_inferable(solver, var_map, (0, 1), CellState.EMPTY, fixed)


class TestCountInferredFilled:
    def test_all_filled_board(self):
        fill = CompleteFill.of([[1] * 3] * 3)
        report = count_inferred_filled(extract_descriptions(fill), fill)
        assert report.inferred_filled == 9
        assert report.proportion_inferred == 1.0
        assert report.queries_run == 9

    def test_all_empty_board_zero_denominator_rule(self):
        fill = CompleteFill.of([[0] * 3] * 3)
        report = count_inferred_filled(extract_descriptions(fill), fill)
        assert report.inferred_filled == 0
        assert report.filled_cell_count == 0
        assert report.proportion_inferred == 1.0

    def test_fixture_board_matches_solution_enumeration(self, fixture_puzzle, fixture_fill):
        report = count_inferred_filled(fixture_puzzle, fixture_fill, "fixture")
        solutions = list(enumerate_solutions(fixture_puzzle))
        filled_in_all = sum(
            1
            for i in range(5)
            for j in range(5)
            if all(s.cells[i][j] for s in solutions)
        )
        assert report.inferred_filled == filled_in_all
        # this particular board is uniquely solvable
        assert len(solutions) == 1
        assert report.inferred_filled == report.filled_cell_count == 7
        assert report.proportion_inferred == 1.0
        assert report.board_id == "fixture"
        assert report.total_propagations > 0

    def test_rejects_non_solution_fill(self, fixture_puzzle):
        with pytest.raises(ValueError, match="does not solve"):
            count_inferred_filled(fixture_puzzle, CompleteFill.of([[0] * 5] * 5))

    def test_soundness_inferred_cells_are_filled_in_generating_fill(self):
        for seed in range(6):
            fill = generate_board(4, 4, 0.55, seed)
            puzzle = extract_descriptions(fill)
            report = count_inferred_filled(puzzle, fill)
            assert report.inferred_filled <= report.filled_cell_count


class TestDecideInference:
    def test_row_only_blank_is_negative(self):
        solver, var_map = line_only_session([1], 2)
        assert decide_inference_session(solver, var_map) is False

    def test_row_only_with_given_is_positive(self):
        solver, var_map = line_only_session([1], 2)
        fixed = PartialFill.blank(1, 2).with_cell(0, 0, CellState.FILLED)
        assert decide_inference_session(solver, var_map, fixed) is True

    def test_permutation_puzzle_negative(self):
        assert decide_inference(Puzzle.of([[1], [1]], [[1], [1]])) is False

    def test_unique_solution_positive(self):
        assert decide_inference(Puzzle.of([[3]], [[1], [1], [1]])) is True

    def test_re_deriving_a_given_does_not_count(self):
        puzzle = Puzzle.of([[3]], [[1], [1], [1]])
        fixed = PartialFill.of([[CellState.FILLED] * 3])
        assert decide_inference(puzzle, fixed) is False
        assert decide_inference(puzzle, fixed, count_already_assigned=True) is True

    def test_inconsistent_fixed_raises(self):
        puzzle = Puzzle.of([[3]], [[1], [1], [1]])
        fixed = PartialFill.blank(1, 3).with_cell(0, 0, CellState.EMPTY)
        with pytest.raises(InconsistentBoardError):
            decide_inference(puzzle, fixed)


class TestBruteForce:
    def test_forced_line(self):
        grid = brute_force_inference(Puzzle.of([[3]], [[1], [1], [1]]))
        assert all(s is CellState.FILLED for s in grid[0])

    def test_permutation_puzzle_varies(self):
        grid = brute_force_inference(Puzzle.of([[1], [1]], [[1], [1]]))
        assert all(s is CellState.INDETERMINATE for row in grid for s in row)

    def test_size_guard(self):
        puzzle = extract_descriptions(generate_board(6, 5, 0.5, 3))
        with pytest.raises(ValueError, match="limited"):
            brute_force_inference(puzzle)

    def test_respects_fixed_cells(self):
        fill = CompleteFill.of([[1, 0]])
        puzzle = extract_descriptions(fill)  # unique solution anyway
        grid = brute_force_inference(puzzle)
        assert grid[0][0] is CellState.FILLED and grid[0][1] is CellState.EMPTY

    def test_agrees_with_sat_on_fixture(self, fixture_puzzle):
        sat_grid, _, _ = infer_cell_map(fixture_puzzle)
        brute = brute_force_inference(fixture_puzzle)
        assert sat_grid == brute


class TestOracleEquivalence:
    @pytest.mark.parametrize("rho", [0.2, 0.5, 0.8])
    def test_small_boards_sample(self, rho):
        # acceptance covers 200 seeds; keep a fast slice here
        for seed in range(25):
            m = 1 + seed % 4
            n = 1 + (seed // 4) % 4
            fill = generate_board(m, n, rho, seed * 977 + int(rho * 100))
            puzzle = extract_descriptions(fill)
            brute = brute_force_inference(puzzle)
            formula, var_map = encode_puzzle(puzzle)
            solver = Solver(formula)
            for i in range(m):
                for j in range(n):
                    forced_filled = is_inferable(solver, var_map, (i, j), CellState.FILLED)
                    forced_empty = is_inferable(solver, var_map, (i, j), CellState.EMPTY)
                    assert forced_filled == (brute[i][j] is CellState.FILLED)
                    assert forced_empty == (brute[i][j] is CellState.EMPTY)

    def test_monotonicity_fixing_solution_cells(self):
        # fixing cells to a solution's values never shrinks the inferable set
        fill = generate_board(3, 3, 0.5, 42)
        puzzle = extract_descriptions(fill)
        formula, var_map = encode_puzzle(puzzle)
        solver = Solver(formula)
        blank_inferable = {
            (i, j, pol)
            for i in range(3)
            for j in range(3)
            for pol in (CellState.FILLED, CellState.EMPTY)
            if is_inferable(solver, var_map, (i, j), pol)
        }
        fixed = PartialFill.blank(3, 3).with_cell(
            0, 0, CellState.FILLED if fill.cells[0][0] else CellState.EMPTY
        )
        for (i, j, pol) in blank_inferable:
            if fixed.cells[i][j] is pol:
                continue
            assert is_inferable(solver, var_map, (i, j), pol, fixed)

    def test_unique_solution_proportion_is_one(self):
        for seed in range(20):
            fill = generate_board(3, 3, 0.6, seed)
            puzzle = extract_descriptions(fill)
            if len(list(enumerate_solutions(puzzle))) == 1:
                report = count_inferred_filled(puzzle, fill)
                assert report.proportion_inferred == 1.0


class TestInferCellMap:
    def test_annotations(self):
        grid, queries, props = infer_cell_map(Puzzle.of([[3]], [[1], [1], [1]]))
        assert grid == [[CellState.FILLED] * 3]
        assert queries == 3  # filled verdicts need no second query
        assert props >= 0
