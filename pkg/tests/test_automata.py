import itertools
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nonolab.automata import (
    MAX_ENUMERATION_LENGTH,
    accepts,
    build_automaton,
    check_is_chain,
    enumerate_satisfying,
    line_count,
    satisfying_lines,
    to_dot,
)
from nonolab.boards import Description, extract_line_runs


def bits(s: str) -> tuple[bool, ...]:
    return tuple(c == "1" for c in s)


class TestBuildAutomaton:
    def test_empty_description_is_single_looping_state(self):
        a = build_automaton(Description.of([]))
        assert a.state_count == 1
        assert a.accepting == {0}
        assert a.on_empty[0] == 0 and a.on_filled[0] is None

    def test_state_count_matches_runs_plus_filled(self):
        a = build_automaton(Description.of([2, 1]))
        assert a.state_count == 6  # 2 runs + 1 + 3 filled
        for runs in ([1], [3], [1, 1, 1], [4, 2]):
            d = Description.of(runs)
            assert build_automaton(d).state_count == d.run_count + 1 + d.filled_total

    def test_single_run_language(self):
        a = build_automaton(Description.of([3]))
        assert accepts(a, bits("01110"))
        assert not accepts(a, bits("11011"))

    def test_start_state_accepting_iff_empty(self):
        assert 0 in build_automaton(Description.of([])).accepting
        assert 0 not in build_automaton(Description.of([1])).accepting

    def test_chain_structure_and_determinism(self):
        for runs in ([], [1], [2, 1], [3, 1, 2]):
            a = build_automaton(Description.of(runs))
            assert check_is_chain(a)


class TestAccepts:
    def test_examples(self):
        a = build_automaton(Description.of([2, 1]))
        assert accepts(a, bits("11010"))
        assert not accepts(a, bits("11011"))
        assert accepts(build_automaton(Description.of([])), bits("000"))

    @given(st.lists(st.booleans(), min_size=1, max_size=10))
    @settings(max_examples=200)
    def test_oracle_agreement_on_own_line(self, line):
        desc = extract_line_runs(line)
        assert accepts(build_automaton(desc), line)

    @given(st.lists(st.booleans(), min_size=1, max_size=8), st.data())
    @settings(max_examples=100, deadline=None)
    def test_oracle_agreement_all_candidates(self, line, data):
        # description drawn from one random line, checked against another
        desc = extract_line_runs(line)
        automaton = build_automaton(desc)
        candidate = data.draw(
            st.lists(st.booleans(), min_size=len(line), max_size=len(line))
        )
        assert accepts(automaton, candidate) == (extract_line_runs(candidate) == desc)


class TestEnumerate:
    def test_two_runs_on_five(self):
        lines = enumerate_satisfying(Description.of([2, 1]), 5)
        rendered = {"".join("1" if b else "0" for b in line) for line in lines}
        assert rendered == {"11010", "11001", "01101"}
        assert len(lines) == 3

    def test_lexicographic_order(self):
        lines = enumerate_satisfying(Description.of([1]), 3)
        assert lines == sorted(lines)

    def test_empty_description(self):
        assert enumerate_satisfying(Description.of([]), 3) == [bits("000")]

    def test_forced_placement(self):
        assert enumerate_satisfying(Description.of([5]), 5) == [bits("11111")]

    def test_guard_refuses_long_lines(self):
        with pytest.raises(ValueError, match="refusing"):
            enumerate_satisfying(Description.of([1]), MAX_ENUMERATION_LENGTH + 1)

    def test_nonfitting_description_has_no_lines(self):
        assert enumerate_satisfying(Description.of([3, 3]), 5) == []

    def test_matches_exhaustive_scan(self):
        for n in range(0, 9):
            seen = {}
            for candidate in itertools.product([False, True], repeat=n):
                seen.setdefault(extract_line_runs(candidate).runs, []).append(candidate)
            for runs, expected in seen.items():
                got = enumerate_satisfying(Description.of(runs), n)
                assert got == sorted(expected)


class TestCountLaw:
    @given(st.lists(st.booleans(), min_size=1, max_size=12))
    @settings(max_examples=150)
    def test_count_formula(self, line):
        desc = extract_line_runs(line)
        n = len(line)
        expected = comb(n - desc.filled_total + 1, desc.run_count)
        assert line_count(desc, n) == expected
        assert len(satisfying_lines(desc, n)) == expected

    def test_nonfitting_counts_zero(self):
        assert line_count(Description.of([4, 4]), 6) == 0


def test_dot_output_mentions_all_states():
    dot = to_dot(build_automaton(Description.of([2, 1])))
    assert dot.startswith("digraph")
    for q in range(6):
        assert f"q{q}" in dot
    assert 'label="1"' in dot and 'label="0"' in dot
