"""Complete CDCL SAT solver with assumption literals and incremental reuse.

Architecture: two-watched-literal propagation, first-UIP clause learning,
activity-ordered branching with lowest-index tie-break, geometric restarts,
phase saving with initial polarity false, no pre- or inprocessing.  All
tie-breaks are pinned so that identical inputs give bit-identical statistics.

A "propagation" is one literal enqueued by unit propagation; decisions and
assumption enqueues are not counted.  Unit input clauses count when first
enqueued, as do asserting literals of learned clauses.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from heapq import heappop, heappush
from typing import Optional, Sequence

from .cnf import CnfFormula

_VAR_DECAY = 0.95
_ACTIVITY_RESCALE = 1e100
_RESTART_FIRST = 100
_RESTART_FACTOR = 1.5


@dataclass(frozen=True)
class SolveStats:
    """Counters for one solve call; wall_time is informational only."""

    propagations: int
    decisions: int
    conflicts: int
    wall_time: float

    def key(self) -> tuple[int, int, int]:
        """The reproducible part (wall time excluded)."""
        return (self.propagations, self.decisions, self.conflicts)


@dataclass(frozen=True)
class SolveOutcome:
    """Satisfiable with a total model over vars 1..variable_count, or not."""

    satisfiable: bool
    model: Optional[tuple[bool, ...]] = None  # indexed by variable id; slot 0 unused

    def model_list(self) -> list[int]:
        """Model as signed DIMACS literals."""
        if self.model is None:
            raise ValueError("no model: outcome is unsatisfiable")
        return [v if self.model[v] else -v for v in range(1, len(self.model))]


class BudgetExhausted(Exception):
    """Conflict budget ran out before the search finished."""

    def __init__(self, stats: SolveStats):
        super().__init__(f"conflict budget exhausted after {stats.conflicts} conflicts")
        self.stats = stats


class Solver:
    """One solver session.  Clauses and learned facts persist across calls.

    Internal literal encoding: variable v becomes 2v (positive) / 2v+1
    (negative), so negation is a single xor.
    """

    def __init__(self, formula: Optional[CnfFormula] = None, variable_count: int = 0):
        self._nvars = 0
        self._values = bytearray(1)  # per var: 0 unassigned, 1 true, 2 false
        self._phase = bytearray(1)  # saved polarity, 0 = false first
        self._level = [0]
        self._reason: list[Optional[list[int]]] = [None]
        self._activity = [0.0]
        self._seen = bytearray(1)
        self._watches: list[list[list[int]]] = [[], []]
        self._trail: list[int] = []
        self._trail_lim: list[int] = []
        self._qhead = 0
        self._heap: list[tuple[float, int]] = []
        self._var_inc = 1.0
        self._unsat = False
        self._pending_units: list[tuple[int, list[int]]] = []
        self._learned_count = 0
        self._propagations_scratch = 0
        # Session-cumulative counters.
        self.total_propagations = 0
        self.total_decisions = 0
        self.total_conflicts = 0
        if formula is not None:
            self.add_formula(formula)
        if variable_count > self._nvars:
            self._grow_to(variable_count)

    # ------------------------------------------------------------------ setup

    @property
    def variable_count(self) -> int:
        return self._nvars

    def _grow_to(self, nvars: int) -> None:
        for v in range(self._nvars + 1, nvars + 1):
            self._values.append(0)
            self._phase.append(0)
            self._level.append(0)
            self._reason.append(None)
            self._activity.append(0.0)
            self._seen.append(0)
            self._watches.append([])
            self._watches.append([])
            heappush(self._heap, (0.0, v))
        self._nvars = nvars

    def add_formula(self, formula: CnfFormula) -> None:
        if formula.variable_count > self._nvars:
            self._grow_to(formula.variable_count)
        for clause in formula.clauses:
            self.add_clause(clause)

    def add_clause(self, lits: Sequence[int]) -> None:
        """Add a clause of signed DIMACS literals at the root level."""
        if self._trail_lim:
            raise RuntimeError("clauses can only be added between solve calls")
        maxvar = max((abs(l) for l in lits), default=0)
        if maxvar > self._nvars:
            self._grow_to(maxvar)
        values = self._values
        clause: list[int] = []
        seen_lits = set()
        for lit in lits:
            if lit == 0:
                raise ValueError("literal 0 is not allowed")
            enc = (abs(lit) << 1) | (lit < 0)
            if enc ^ 1 in seen_lits:
                return  # tautology
            if enc in seen_lits:
                continue
            val = values[enc >> 1]
            if val == 1 + (enc & 1):
                return  # already satisfied at root level
            if val == 2 - (enc & 1):
                continue  # falsified at root level, drop literal
            seen_lits.add(enc)
            clause.append(enc)
        if not clause:
            self._unsat = True
            return
        if len(clause) == 1:
            self._pending_units.append((clause[0], clause))
            return
        self._attach(clause)

    def _attach(self, clause: list[int]) -> None:
        self._watches[clause[0]].append(clause)
        self._watches[clause[1]].append(clause)

    # ------------------------------------------------------------- assignment

    def _enqueue(self, lit: int, reason: Optional[list[int]]) -> None:
        self._values[lit >> 1] = 1 + (lit & 1)
        self._level[lit >> 1] = len(self._trail_lim)
        self._reason[lit >> 1] = reason
        self._trail.append(lit)

    def _backtrack(self, target_level: int) -> None:
        if len(self._trail_lim) <= target_level:
            return
        values = self._values
        phase = self._phase
        bound = self._trail_lim[target_level]
        for i in range(len(self._trail) - 1, bound - 1, -1):
            lit = self._trail[i]
            v = lit >> 1
            phase[v] = 1 - (lit & 1)
            values[v] = 0
            self._reason[v] = None
            heappush(self._heap, (-self._activity[v], v))
        del self._trail[bound:]
        del self._trail_lim[target_level:]
        self._qhead = bound

    # ------------------------------------------------------------ propagation

    def _propagate(self) -> Optional[list[int]]:
        """Fixpoint unit propagation; returns a conflicting clause or None."""
        values = self._values
        watches = self._watches
        trail = self._trail
        level_now = len(self._trail_lim)
        props = 0
        confl: Optional[list[int]] = None
        while self._qhead < len(trail):
            p = trail[self._qhead]
            self._qhead += 1
            false_lit = p ^ 1
            ws = watches[false_lit]
            if not ws:
                continue
            i = j = 0
            end = len(ws)
            while i < end:
                clause = ws[i]
                i += 1
                if clause[0] == false_lit:
                    clause[0] = clause[1]
                    clause[1] = false_lit
                first = clause[0]
                if values[first >> 1] == 1 + (first & 1):
                    ws[j] = clause
                    j += 1
                    continue
                found = False
                for k in range(2, len(clause)):
                    lk = clause[k]
                    if values[lk >> 1] != 2 - (lk & 1):
                        clause[1] = lk
                        clause[k] = false_lit
                        watches[lk].append(clause)
                        found = True
                        break
                if found:
                    continue
                ws[j] = clause
                j += 1
                if values[first >> 1] == 2 - (first & 1):
                    while i < end:  # keep remaining watchers before bailing out
                        ws[j] = ws[i]
                        j += 1
                        i += 1
                    self._qhead = len(trail)
                    confl = clause
                else:
                    values[first >> 1] = 1 + (first & 1)
                    self._level[first >> 1] = level_now
                    self._reason[first >> 1] = clause
                    trail.append(first)
                    props += 1
            del ws[j:]
            if confl is not None:
                break
        self._propagations_scratch += props
        return confl

    # --------------------------------------------------------------- learning

    def _var_bump(self, v: int) -> None:
        act = self._activity[v] + self._var_inc
        self._activity[v] = act
        if act > _ACTIVITY_RESCALE:
            self._rescale_activity()
        elif self._values[v] == 0:
            heappush(self._heap, (-act, v))

    def _rescale_activity(self) -> None:
        scale = 1.0 / _ACTIVITY_RESCALE
        for v in range(1, self._nvars + 1):
            self._activity[v] *= scale
        self._var_inc *= scale
        self._heap = [(-self._activity[v], v) for v in range(1, self._nvars + 1)
                      if self._values[v] == 0]
        self._heap.sort()

    def _analyze(self, confl: list[int]) -> tuple[list[int], int]:
        """First-UIP learned clause and the level to backtrack to."""
        learnt: list[int] = [0]
        seen = self._seen
        level = self._level
        trail = self._trail
        current = len(self._trail_lim)
        counter = 0
        p = -1
        index = len(trail) - 1
        while True:
            start = 0 if p == -1 else 1  # reason clauses keep their lit first
            for k in range(start, len(confl)):
                q = confl[k]
                v = q >> 1
                if not seen[v] and level[v] > 0:
                    seen[v] = 1
                    self._var_bump(v)
                    if level[v] >= current:
                        counter += 1
                    else:
                        learnt.append(q)
            while not seen[trail[index] >> 1]:
                index -= 1
            p = trail[index]
            index -= 1
            seen[p >> 1] = 0
            counter -= 1
            if counter == 0:
                break
            confl = self._reason[p >> 1]  # type: ignore[assignment]
        learnt[0] = p ^ 1
        for q in learnt[1:]:
            seen[q >> 1] = 0
        if len(learnt) == 1:
            return learnt, 0
        # Second watch: the highest-level literal among the rest.
        best = 1
        for k in range(2, len(learnt)):
            if level[learnt[k] >> 1] > level[learnt[best] >> 1]:
                best = k
        learnt[1], learnt[best] = learnt[best], learnt[1]
        return learnt, level[learnt[1] >> 1]

    # ----------------------------------------------------------------- search

    def _decide(self) -> bool:
        heap = self._heap
        values = self._values
        while heap:
            neg_act, v = heappop(heap)
            if values[v] != 0 or -neg_act != self._activity[v]:
                continue
            self._trail_lim.append(len(self._trail))
            lit = (v << 1) | (1 - self._phase[v])
            self._enqueue(lit, None)
            return True
        # The heap can run dry through stale entries; rebuild if work remains.
        pending = [(-self._activity[v], v) for v in range(1, self._nvars + 1)
                   if values[v] == 0]
        if not pending:
            return False
        pending.sort()
        self._heap = pending
        return self._decide()

    def solve(
        self,
        assumptions: Sequence[int] = (),
        conflict_budget: Optional[int] = None,
    ) -> tuple[SolveOutcome, SolveStats]:
        """Decide the current clause set under the given assumption literals.

        Returns (outcome, per-call stats).  Raises BudgetExhausted when the
        optional conflict budget runs out; the session stays usable.
        """
        started = time.perf_counter()
        self._propagations_scratch = 0
        decisions = 0
        conflicts = 0

        def stats() -> SolveStats:
            self.total_propagations += self._propagations_scratch
            self.total_decisions += decisions
            self.total_conflicts += conflicts
            return SolveStats(
                self._propagations_scratch, decisions, conflicts,
                time.perf_counter() - started,
            )

        if self._unsat:
            return SolveOutcome(False), stats()
        assume = []
        for lit in assumptions:
            if lit == 0 or abs(lit) > self._nvars:
                raise ValueError(f"assumption literal {lit} outside variables 1..{self._nvars}")
            assume.append((abs(lit) << 1) | (lit < 0))

        values = self._values
        if self._pending_units:
            pending, self._pending_units = self._pending_units, []
            for lit, clause in pending:
                val = values[lit >> 1]
                if val == 2 - (lit & 1):
                    self._unsat = True
                    return SolveOutcome(False), stats()
                if val == 0:
                    self._enqueue(lit, clause)
                    self._propagations_scratch += 1

        restart_limit = _RESTART_FIRST
        conflicts_since_restart = 0
        while True:
            confl = self._propagate()
            if confl is not None:
                conflicts += 1
                conflicts_since_restart += 1
                if not self._trail_lim:
                    self._unsat = True
                    return SolveOutcome(False), stats()
                if conflict_budget is not None and conflicts > conflict_budget:
                    self._backtrack(0)
                    raise BudgetExhausted(stats())
                learnt, back_level = self._analyze(confl)
                self._backtrack(back_level)
                if len(learnt) > 1:
                    self._attach(learnt)
                    self._learned_count += 1
                self._enqueue(learnt[0], learnt)
                self._propagations_scratch += 1
                self._var_inc /= _VAR_DECAY
                continue
            depth = len(self._trail_lim)
            if depth < len(assume):
                p = assume[depth]
                val = values[p >> 1]
                if val == 2 - (p & 1):
                    self._backtrack(0)
                    return SolveOutcome(False), stats()
                self._trail_lim.append(len(self._trail))
                if val == 0:
                    self._enqueue(p, None)
                continue
            if len(self._trail) == self._nvars:
                model = tuple(
                    values[v] == 1 if v else False for v in range(self._nvars + 1)
                )
                self._backtrack(0)
                return SolveOutcome(True, model), stats()
            if conflicts_since_restart >= restart_limit:
                conflicts_since_restart = 0
                restart_limit = int(restart_limit * _RESTART_FACTOR)
                self._backtrack(0)
                continue
            decisions += 1
            self._decide()


def solve(
    formula: CnfFormula,
    assumptions: Sequence[int] = (),
    conflict_budget: Optional[int] = None,
) -> tuple[SolveOutcome, SolveStats]:
    """One-shot solve of a formula in a fresh session."""
    return Solver(formula).solve(assumptions, conflict_budget)


def solve_incremental(
    session: Solver,
    added_clauses: Sequence[Sequence[int]] = (),
    assumptions: Sequence[int] = (),
    conflict_budget: Optional[int] = None,
) -> tuple[SolveOutcome, SolveStats]:
    """Add clauses to a session permanently, then solve under assumptions.

    Added clauses stay in the session for later calls, as do learned clauses;
    cumulative counters are exposed on the session itself.
    """
    for clause in added_clauses:
        session.add_clause(clause)
    return session.solve(assumptions, conflict_budget)


def verify_model(formula: CnfFormula, model: Sequence[bool]) -> bool:
    """Clause-by-clause check of a claimed model."""
    for clause in formula.clauses:
        if not any((lit > 0) == model[abs(lit)] for lit in clause):
            return False
    return True
