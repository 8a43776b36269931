"""Chain automata recognizing exactly the lines that satisfy a description.

A description [l1..lt] corresponds to the language 0*1^l1 0+ 1^l2 0+ ... 1^lt 0*.
The automaton is a chain: one start state looping on empty cells, l_i states
per run advanced on filled cells, one looping gap state between consecutive
runs, and one looping trailing state.  Missing transitions reject implicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .boards import Description

#: Upper bound for exhaustive line enumeration (2^n candidates).
MAX_ENUMERATION_LENGTH = 24


@dataclass(frozen=True)
class LineAutomaton:
    """Deterministic chain automaton for one description.

    States are numbered 0..state_count-1 in chain order.  ``on_empty[q]`` and
    ``on_filled[q]`` give the successor for reading an empty/filled cell, or
    None for an implicit reject.  ``entry_bit[q]`` is the cell value consumed
    by every transition entering q (the chain gives each state a unique one).
    """

    description: Description
    on_empty: tuple[Optional[int], ...]
    on_filled: tuple[Optional[int], ...]
    accepting: frozenset[int]

    @property
    def state_count(self) -> int:
        return len(self.on_empty)

    @property
    def entry_bit(self) -> tuple[bool, ...]:
        return tuple(q in self._filled_entry() for q in range(self.state_count))

    def _filled_entry(self) -> frozenset[int]:
        # Run states are entered on a filled cell; start/gap/trailing on empty.
        filled = set()
        state = 1
        for run in self.description.runs:
            filled.update(range(state, state + run))
            state += run + 1
        return frozenset(filled)

    def step(self, state: int, cell: bool) -> Optional[int]:
        return self.on_filled[state] if cell else self.on_empty[state]

    def predecessors(self, state: int) -> tuple[int, ...]:
        preds = []
        for q in range(self.state_count):
            if self.on_empty[q] == state or self.on_filled[q] == state:
                preds.append(q)
        return tuple(preds)


def build_automaton(desc: Description) -> LineAutomaton:
    """Compile a description into its chain automaton.

    The state count is always run_count + 1 + filled_total: the start state,
    l_i states per run, one gap state after each run but the last, and one
    trailing state.  For the empty description the start state alone accepts 0*.
    """
    if not desc.runs:
        return LineAutomaton(desc, (0,), (None,), frozenset({0}))
    total = desc.run_count + 1 + desc.filled_total
    on_empty: list[Optional[int]] = [None] * total
    on_filled: list[Optional[int]] = [None] * total
    on_empty[0] = 0
    on_filled[0] = 1
    state = 1
    for k, run in enumerate(desc.runs):
        for offset in range(run):
            last_of_run = offset == run - 1
            if last_of_run:
                on_empty[state] = state + 1  # into gap or trailing state
            else:
                on_filled[state] = state + 1
            state += 1
        if k < desc.run_count - 1:
            on_empty[state] = state  # gap: absorb extra empties
            on_filled[state] = state + 1
            state += 1
    on_empty[state] = state  # trailing state absorbs empties
    accepting = frozenset({state - 1, state})
    return LineAutomaton(desc, tuple(on_empty), tuple(on_filled), accepting)


def accepts(automaton: LineAutomaton, line: Sequence[bool]) -> bool:
    """Run the automaton over the full line; reject on a missing transition."""
    state: Optional[int] = 0
    for cell in line:
        state = automaton.step(state, bool(cell))
        if state is None:
            return False
    return state in automaton.accepting


def _place_runs(runs: tuple[int, ...], n: int):
    """Yield all length-n boolean lines realizing the given runs, unordered."""
    if not runs:
        yield (False,) * n
        return
    first, rest = runs[0], runs[1:]
    tail_min = sum(rest) + len(rest)  # each later run needs a leading gap
    for start in range(0, n - first - tail_min + 1):
        head = (False,) * start + (True,) * first
        if not rest:
            yield head + (False,) * (n - len(head))
        else:
            for tail in _place_runs(rest, n - len(head) - 1):
                yield head + (False,) + tail


def satisfying_lines(desc: Description, n: int) -> list[tuple[bool, ...]]:
    """All length-n lines matching ``desc``, lexicographically sorted.

    No size guard; callers are expected to keep n small themselves.
    """
    if not desc.fits(n):
        return []
    return sorted(_place_runs(desc.runs, n))


def enumerate_satisfying(desc: Description, n: int) -> list[tuple[bool, ...]]:
    """Guarded exhaustive enumeration used as the line oracle in tests."""
    if n > MAX_ENUMERATION_LENGTH:
        raise ValueError(
            f"refusing to enumerate lines of length {n} (limit {MAX_ENUMERATION_LENGTH})"
        )
    return satisfying_lines(desc, n)


def line_count(desc: Description, n: int) -> int:
    """Closed-form count of satisfying lines: C(n - filled + 1, runs)."""
    from math import comb

    if not desc.fits(n):
        return 0
    return comb(n - desc.filled_total + 1, desc.run_count)


def to_dot(automaton: LineAutomaton) -> str:
    """Render the automaton as a DOT digraph for inspection."""
    lines = ["digraph line_automaton {", "  rankdir=LR;", '  start [shape=point, label=""];']
    for q in range(automaton.state_count):
        shape = "doublecircle" if q in automaton.accepting else "circle"
        lines.append(f"  q{q} [shape={shape}];")
    lines.append("  start -> q0;")
    for q in range(automaton.state_count):
        if automaton.on_empty[q] is not None:
            lines.append(f'  q{q} -> q{automaton.on_empty[q]} [label="0"];')
        if automaton.on_filled[q] is not None:
            lines.append(f'  q{q} -> q{automaton.on_filled[q]} [label="1"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def check_is_chain(automaton: LineAutomaton) -> bool:
    """Transitions only self-loop or advance; used by property tests."""
    for q in range(automaton.state_count):
        for nxt in (automaton.on_empty[q], automaton.on_filled[q]):
            if nxt is not None and nxt < q:
                return False
    return True


__all__ = [
    "LineAutomaton",
    "MAX_ENUMERATION_LENGTH",
    "accepts",
    "build_automaton",
    "check_is_chain",
    "enumerate_satisfying",
    "line_count",
    "satisfying_lines",
    "to_dot",
]
