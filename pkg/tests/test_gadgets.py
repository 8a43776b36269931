import pytest

from nonolab.boards import CompleteFill, Puzzle
from nonolab.gadgets import (
    GADGET_NAMES,
    GadgetError,
    attempt_concat_composition,
    certificate_from_solutions,
    enumerate_gadget_solutions,
    load_gadget,
    load_gadgets,
    parse_gadget,
    verify_gadget_properties,
    verify_noninference_certificate,
)
from nonolab.inference import decide_inference


@pytest.fixture(scope="module")
def specs():
    return {spec.name: spec for spec in load_gadgets()}


@pytest.fixture(scope="module")
def solutions(specs):
    return {name: enumerate_gadget_solutions(spec) for name, spec in specs.items()}


class TestLoading:
    def test_all_eight_load_as_11x11(self, specs):
        assert set(specs) == set(GADGET_NAMES)
        for spec in specs.values():
            assert spec.puzzle.m == 11 and spec.puzzle.n == 11
            assert spec.puzzle.is_balanced()

    def test_not_gadget_frame_rows(self, specs):
        # full-width rows sit just inside the border (second and second-to-last)
        rows = specs["not"].puzzle.row_descriptions
        assert rows[1].runs == (11,)
        assert rows[9].runs == (11,)

    def test_corrupted_dimensions_error_names_gadget(self):
        bad = "10 10\n" + "1\n" * 20 + "ports:\nin.pos 5 2\nin.neg 5 0\n"
        with pytest.raises(GadgetError, match="'broken'.*11x11"):
            parse_gadget("broken", bad)

    def test_missing_port_pair_is_an_error(self, specs):
        text = "11 11\n" + "\n".join(
            " ".join(str(r) for r in d.runs) for d in specs["not"].puzzle.row_descriptions
        )
        text += "\n" + "\n".join(
            " ".join(str(r) for r in d.runs) for d in specs["not"].puzzle.col_descriptions
        )
        text += "\nports:\nin.pos 5 2\n"
        with pytest.raises(GadgetError, match="missing a port pair"):
            parse_gadget("not", text)

    def test_unknown_gadget_name(self):
        with pytest.raises(GadgetError, match="unknown gadget"):
            load_gadget("nand")


class TestSolutionSets:
    def test_every_gadget_consistent(self, solutions):
        for name, sols in solutions.items():
            assert len(sols) >= 1, name

    def test_non_terminal_gadgets_have_multiple_solutions(self, solutions):
        for name in ("not", "and", "or", "wire", "crossover", "splitter"):
            assert len(solutions[name]) >= 2, name

    def test_enumeration_is_exhaustive_and_small(self, solutions):
        for name, sols in solutions.items():
            assert len(sols) < 10_000
            assert len(set(s.cells for s in sols)) == len(sols)

    def test_limit_truncates(self, specs):
        assert len(enumerate_gadget_solutions(specs["and"], limit=2)) == 2

    def test_not_gadget_port_exclusivity(self, specs, solutions):
        spec = specs["not"]
        for fill in solutions["not"]:
            for signal in ("in", "out"):
                pos, neg = spec.signal_pair(signal)
                assert fill.cells[pos[0]][pos[1]] != fill.cells[neg[0]][neg[1]]


class TestGateSemantics:
    def sig(self, spec, fill, signal):
        pos, neg = spec.signal_pair(signal)
        cell = neg if signal.startswith("in") else pos
        return fill.cells[cell[0]][cell[1]]

    def test_not_negates(self, specs, solutions):
        spec = specs["not"]
        for fill in solutions["not"]:
            # the positive input cell is filled exactly when the negative
            # output cell is empty
            v = spec.ports["in.pos"]
            nv_out = spec.ports["out.neg"]
            assert fill.cells[v[0]][v[1]] == (not fill.cells[nv_out[0]][nv_out[1]])
            assert self.sig(spec, fill, "out") == (not self.sig(spec, fill, "in"))

    def test_and_conjunction(self, specs, solutions):
        spec = specs["and"]
        seen = set()
        for fill in solutions["and"]:
            a, b = self.sig(spec, fill, "in1"), self.sig(spec, fill, "in2")
            assert self.sig(spec, fill, "out") == (a and b)
            seen.add((a, b))
        assert seen == {(False, False), (False, True), (True, False), (True, True)}

    def test_or_disjunction(self, specs, solutions):
        spec = specs["or"]
        seen = set()
        for fill in solutions["or"]:
            a, b = self.sig(spec, fill, "in1"), self.sig(spec, fill, "in2")
            assert self.sig(spec, fill, "out") == (a or b)
            seen.add((a, b))
        assert seen == {(False, False), (False, True), (True, False), (True, True)}

    def test_wire_splitter_crossover_pass_values(self, specs, solutions):
        for fill in solutions["wire"]:
            spec = specs["wire"]
            assert self.sig(spec, fill, "out") == self.sig(spec, fill, "in")
        for fill in solutions["splitter"]:
            spec = specs["splitter"]
            assert self.sig(spec, fill, "out1") == self.sig(spec, fill, "in")
            assert self.sig(spec, fill, "out2") == self.sig(spec, fill, "in")
        for fill in solutions["crossover"]:
            spec = specs["crossover"]
            assert self.sig(spec, fill, "out1") == self.sig(spec, fill, "in1")
            assert self.sig(spec, fill, "out2") == self.sig(spec, fill, "in2")

    def test_input_terminal_offers_both_polarities(self, specs, solutions):
        spec = specs["input"]
        assert {self.sig(spec, fill, "out") for fill in solutions["input"]} == {True, False}


class TestPropertySuite:
    def test_all_gadgets_pass(self):
        for spec in load_gadgets():
            report = verify_gadget_properties(spec)
            failed = [c for c in report.checks if c.status == "fail"]
            assert not failed, f"{spec.name}: {[(c.name, c.detail) for c in failed]}"

    def test_composition_check_reports_skipped(self, specs):
        report = verify_gadget_properties(specs["wire"])
        composition = next(c for c in report.checks if c.name == "composition-semantics")
        assert composition.status == "skipped"

    def test_concat_composition_impossible_for_gadget_frames(self, specs):
        with pytest.raises(ValueError):
            attempt_concat_composition(specs["wire"].puzzle, specs["wire"].puzzle)


class TestCertificates:
    def test_two_cell_line_certificate(self):
        # row [1] over two cells with column constraints allowing both fills
        puzzle = Puzzle.of([[1], [1]], [[1], [1]])
        s1 = CompleteFill.of([[1, 0], [0, 1]])
        s2 = CompleteFill.of([[0, 1], [1, 0]])
        certificate = certificate_from_solutions(puzzle, [s1, s2])
        assert certificate is not None
        assert verify_noninference_certificate(puzzle, certificate)

    def test_unique_solution_has_no_certificate(self):
        puzzle = Puzzle.of([[3]], [[1], [1], [1]])
        full = CompleteFill.of([[1, 1, 1]])
        assert certificate_from_solutions(puzzle, [full]) is None
        # a forged certificate fails verification
        forged = [full] * 6
        assert not verify_noninference_certificate(puzzle, forged)

    def test_malformed_certificates_raise(self):
        puzzle = Puzzle.of([[1], [1]], [[1], [1]])
        fill = CompleteFill.of([[1, 0], [0, 1]])
        with pytest.raises(ValueError, match="must contain 8"):
            verify_noninference_certificate(puzzle, [fill] * 3)
        with pytest.raises(ValueError, match="dimensions"):
            verify_noninference_certificate(puzzle, [CompleteFill.of([[1]])] * 8)

    def test_certificate_implies_negative_inference_decision(self):
        puzzle = Puzzle.of([[1], [1]], [[1], [1]])
        s1 = CompleteFill.of([[1, 0], [0, 1]])
        s2 = CompleteFill.of([[0, 1], [1, 0]])
        certificate = certificate_from_solutions(puzzle, [s1, s2])
        assert verify_noninference_certificate(puzzle, certificate)
        assert decide_inference(puzzle) is False

    def test_wrong_polarity_witness_rejected(self):
        puzzle = Puzzle.of([[1], [1]], [[1], [1]])
        s1 = CompleteFill.of([[1, 0], [0, 1]])
        s2 = CompleteFill.of([[0, 1], [1, 0]])
        # swap one pair so the "filled" witness has the cell empty
        certificate = certificate_from_solutions(puzzle, [s1, s2])
        certificate[0], certificate[1] = certificate[1], certificate[0]
        assert not verify_noninference_certificate(puzzle, certificate)
