import pytest

from nonolab.cnf import CnfFormula, from_dimacs
from nonolab.rng import SplitMix64
from nonolab.sat import BudgetExhausted, Solver, solve, solve_incremental, verify_model

from .oracles import pigeonhole_formula, random_3cnf, truth_table_satisfiable


def formula(*clauses: list[int]) -> CnfFormula:
    f = CnfFormula()
    for c in clauses:
        f.add_clause(list(c))
    return f


class TestBasics:
    def test_contradiction(self):
        outcome, _ = solve(formula([1], [-1]))
        assert not outcome.satisfiable

    def test_simple_satisfiable(self):
        outcome, _ = solve(formula([1, 2], [-1]))
        assert outcome.satisfiable
        assert outcome.model[2] is True
        assert outcome.model[1] is False

    def test_pigeonhole_unsat(self):
        outcome, _ = solve(pigeonhole_formula(4, 3))
        assert not outcome.satisfiable

    def test_model_is_total(self):
        f = formula([1, 2])
        f.variable_count = 5  # three unconstrained variables
        outcome, _ = solve(f)
        assert outcome.satisfiable
        assert len(outcome.model) == 6
        assert verify_model(f, outcome.model)

    def test_model_list_signed_literals(self):
        outcome, _ = solve(formula([1], [-2]))
        assert outcome.model_list() == [1, -2]

    def test_propagations_nonnegative_and_counted(self):
        _, stats = solve(formula([1], [2]))
        assert stats.propagations == 2
        assert stats.decisions == 0


class TestAssumptions:
    def test_assumption_forces_outcome(self):
        f = formula([1, 2])
        sat_out, _ = solve(f, assumptions=[-1])
        assert sat_out.satisfiable and sat_out.model[2]
        unsat_out, _ = solve(f, assumptions=[-1, -2])
        assert not unsat_out.satisfiable

    def test_assumptions_equivalent_to_units(self):
        rng = SplitMix64(11)
        for trial in range(40):
            nvars, clauses = random_3cnf(rng, max_vars=12, max_clauses=40)
            f = CnfFormula(variable_count=nvars)
            f.extend(clauses)
            assumptions = []
            for v in range(1, nvars + 1):
                pick = rng.next_u64() % 4
                if pick == 0:
                    assumptions.append(v)
                elif pick == 1:
                    assumptions.append(-v)
            with_assumptions, _ = solve(f, assumptions)
            g = CnfFormula(variable_count=nvars)
            g.extend(clauses)
            for lit in assumptions:
                g.add_clause([lit])
            with_units, _ = solve(g)
            assert with_assumptions.satisfiable == with_units.satisfiable

    def test_unsat_monotone_under_more_assumptions(self):
        rng = SplitMix64(13)
        for trial in range(30):
            nvars, clauses = random_3cnf(rng, max_vars=10, max_clauses=45)
            f = CnfFormula(variable_count=nvars)
            f.extend(clauses)
            base = [1 if rng.next_u64() % 2 else -1]
            out_a, _ = solve(f, base)
            if not out_a.satisfiable:
                extra = base + [2 if rng.next_u64() % 2 else -2, 3]
                out_b, _ = solve(f, extra)
                assert not out_b.satisfiable

    def test_contradictory_assumptions(self):
        outcome, _ = solve(formula([1, 2]), assumptions=[1, -1])
        assert not outcome.satisfiable

    def test_assumption_variable_out_of_range(self):
        with pytest.raises(ValueError, match="outside"):
            solve(formula([1]), assumptions=[9])

    def test_model_respects_assumptions(self):
        outcome, _ = solve(formula([1, 2], [2, 3]), assumptions=[-2])
        assert outcome.satisfiable
        assert outcome.model[1] and outcome.model[3] and not outcome.model[2]


class TestOracleAgreement:
    def test_random_3cnf_sample(self):
        rng = SplitMix64(7)
        for trial in range(100):
            nvars, clauses = random_3cnf(rng)
            f = CnfFormula(variable_count=nvars)
            f.extend(clauses)
            outcome, _ = solve(f)
            assert outcome.satisfiable == truth_table_satisfiable(nvars, clauses)
            if outcome.satisfiable:
                assert verify_model(f, outcome.model)


class TestDeterminism:
    def test_stats_identical_across_runs(self):
        rng = SplitMix64(3)
        nvars, clauses = random_3cnf(rng, max_vars=16, max_clauses=70)
        f = CnfFormula(variable_count=nvars)
        f.extend(clauses)
        runs = [solve(f) for _ in range(3)]
        outcomes = {out.satisfiable for out, _ in runs}
        keys = {stats.key() for _, stats in runs}
        models = {out.model for out, _ in runs}
        assert len(outcomes) == 1 and len(keys) == 1 and len(models) == 1


class TestBudget:
    def test_budget_exhaustion_raises(self):
        with pytest.raises(BudgetExhausted) as info:
            solve(pigeonhole_formula(7, 6), conflict_budget=3)
        assert info.value.stats.conflicts >= 3

    def test_session_usable_after_budget(self):
        solver = Solver(pigeonhole_formula(7, 6))
        with pytest.raises(BudgetExhausted):
            solver.solve(conflict_budget=3)
        outcome, _ = solver.solve()  # complete search still finishes
        assert not outcome.satisfiable


class TestIncremental:
    def test_added_clauses_persist(self):
        solver = Solver(formula([1, 2]))
        out, _ = solver.solve([1])
        assert out.satisfiable
        solver.add_clause([-1])
        out, _ = solver.solve([1])
        assert not out.satisfiable
        out, _ = solver.solve([-1])  # base formula still satisfiable without it
        assert out.satisfiable

    def test_blocking_clause_enumeration(self):
        # 2 variables, clause (x1 or x2): exactly three models
        solver = Solver(formula([1, 2]))
        seen = set()
        while True:
            outcome, _ = solver.solve()
            if not outcome.satisfiable:
                break
            model = outcome.model[1:]
            assert model not in seen
            seen.add(model)
            solver.add_clause([-v if value else v for v, value in enumerate(model, 1)])
        assert seen == {(True, True), (True, False), (False, True)}

    def test_learned_state_keeps_soundness(self):
        rng = SplitMix64(23)
        nvars, clauses = random_3cnf(rng, max_vars=14, max_clauses=60)
        f = CnfFormula(variable_count=nvars)
        f.extend(clauses)
        session = Solver(f)
        for v in range(1, 6):
            for lit in (v, -v):
                session_result, _ = session.solve([lit])
                fresh_result, _ = solve(f, [lit])
                assert session_result.satisfiable == fresh_result.satisfiable

    def test_session_counters_accumulate(self):
        solver = Solver(formula([1], [1, 2]))
        _, first = solver.solve()
        _, second = solver.solve()
        assert solver.total_propagations == first.propagations + second.propagations

    def test_solve_incremental_equivalent_to_conjunction(self):
        rng = SplitMix64(29)
        for trial in range(20):
            nvars, clauses = random_3cnf(rng, max_vars=10, max_clauses=40)
            base, extra = clauses[: len(clauses) // 2], clauses[len(clauses) // 2 :]
            f = CnfFormula(variable_count=nvars)
            f.extend(base)
            session = Solver(f)
            assumptions = [1] if rng.next_u64() % 2 else [-1]
            incremental, _ = solve_incremental(session, extra, assumptions)
            g = CnfFormula(variable_count=nvars)
            g.extend(clauses)
            direct, _ = solve(g, assumptions)
            assert incremental.satisfiable == direct.satisfiable
            # the added clauses persist in the session
            followup, _ = session.solve(assumptions)
            assert followup.satisfiable == direct.satisfiable


class TestDimacsEntry:
    def test_solve_parsed_dimacs(self):
        f = from_dimacs("p cnf 3 2\n1 -2 0\n2 3 0\n")
        outcome, _ = solve(f)
        assert outcome.satisfiable
        assert verify_model(f, outcome.model)
