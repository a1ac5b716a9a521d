import math

import pytest

from qarena.limits import (
    IndexNotBeyondNError,
    LimitKind,
    LimitProblem,
    LimitRole,
    NonpositiveValueError,
    OutOfWindowError,
    Phase,
    SessionOverError,
    WrongMoverError,
    choose_epsilon,
    engine_owns,
    eval_point,
    find_N,
    find_witness,
    new_session,
    parse_expr,
    run_engine,
    session_step,
)

ONE_OVER_N = LimitProblem.sequence("1/n", 0.0)
N_PLUS_1_OVER_N = LimitProblem.sequence("(n + 1)/n", 1.0)


class TestFindN:
    def test_one_over_n_analytic(self):
        tail = find_N(ONE_OVER_N, 0.1)
        assert tail.value == 10
        assert tail.analytic

    def test_constant_sequence(self):
        tail = find_N(LimitProblem.sequence("7", 7.0), 0.001)
        assert tail.value == 0
        assert tail.analytic

    def test_n_plus_one_over_n(self):
        tail = find_N(N_PLUS_1_OVER_N, 0.01)
        assert tail.value == 100
        assert tail.analytic

    def test_analytic_window_spot_check(self):
        # The analytic claim holds over a long window beyond N.
        for problem, eps in ((ONE_OVER_N, 0.05), (N_PLUS_1_OVER_N, 0.02)):
            tail = find_N(problem, eps)
            assert tail.analytic
            for n in range(tail.value + 1, tail.value + 10_001):
                assert abs(problem.limit
                           - eval_point(problem.expr, float(n))) < eps

    def test_unregistered_sequence_is_empirical(self):
        problem = LimitProblem.sequence("1/(n * n)", 0.0)
        tail = find_N(problem, 0.01, window=500)
        assert tail is not None
        assert tail.method == "empirical"
        assert abs(eval_point(problem.expr, float(tail.value + 1))) < 0.01

    def test_false_claim_returns_none(self):
        wrong = LimitProblem.sequence("1/n", 0.5)
        assert find_N(wrong, 0.1, window=100, scan_budget=5000) is None


class TestFindWitness:
    def test_point_witness_at_half_delta(self):
        problem = LimitProblem.at_point("x^2", 3.0, 8.0)
        w = find_witness(problem, 0.5, 0.1)
        assert w.value == 3.05
        assert w.magnitude == pytest.approx(1.3025, abs=1e-12)
        assert w.magnitude >= 0.5

    def test_sequence_witness_just_past_n(self):
        problem = LimitProblem.sequence("1/n", 1.0)
        w = find_witness(problem, 0.5, 7)
        assert w.value == 8.0
        assert w.magnitude == pytest.approx(0.875)

    def test_true_claim_has_no_witness(self):
        problem = LimitProblem.at_point("x^2", 3.0, 9.0)
        assert find_witness(problem, 1.0, 0.1) is None

    def test_witness_respects_the_window(self):
        problem = LimitProblem.at_point("x^2", 3.0, 8.9)
        w = find_witness(problem, 0.2, 0.05)
        assert w is not None
        assert 0 < abs(w.value - 3.0) < 0.05

    def test_infinity_witness(self):
        problem = LimitProblem.at_infinity("1/x", 1.0)
        w = find_witness(problem, 0.5, 10.0)
        assert w is not None
        assert w.value >= 10.0
        assert abs(eval_point(problem.expr, w.value) - 1.0) >= 0.5


class TestChooseEpsilon:
    def test_registered_function_claim(self):
        assert choose_epsilon(LimitProblem.at_point("x^2", 3.0, 8.0)) == 0.5

    def test_registered_sequence_claim(self):
        assert choose_epsilon(LimitProblem.sequence("1/n", 1.0)) == 0.5

    def test_fallback_is_one(self):
        # Constant claimed correctly: nothing to dispute, documented fallback.
        assert choose_epsilon(LimitProblem.sequence("5", 5.0)) == 1.0

    def test_unregistered_false_claim_still_positive(self):
        eps = choose_epsilon(LimitProblem.at_point("x^3", 2.0, 7.0))
        assert eps > 0.0


class TestConvergenceSession:
    """The §-worked-example flow: a=9, then ε, engine δ, then x."""

    def _start(self):
        return new_session(LimitKind.FUNCTION_AT_POINT, "x^2", x0=3.0,
                           a=9.0, human_role=LimitRole.FALSIFIER)

    def test_paper_round_eps_one_x_29(self):
        s = self._start()
        assert s.phase is Phase.CHOOSE_EPSILON
        s = session_step(s, 1.0, mover=LimitRole.FALSIFIER)
        s = run_engine(s)
        assert s.bound == pytest.approx(math.sqrt(10) - 3, rel=1e-15)
        s = session_step(s, 2.9, mover=LimitRole.FALSIFIER)
        assert s.phase is Phase.DONE
        assert s.matrix_holds is True
        assert s.deviation == pytest.approx(0.59, abs=1e-12)
        assert s.winner is LimitRole.VERIFIER

    def test_paper_round_eps_one_x_295(self):
        s = self._start()
        s = session_step(s, 1.0, mover=LimitRole.FALSIFIER)
        s = run_engine(s)
        s = session_step(s, 2.95, mover=LimitRole.FALSIFIER)
        assert s.matrix_holds is True
        assert s.deviation == pytest.approx(0.2975, abs=1e-12)

    def test_paper_round_eps_tenth_x_299(self):
        s = self._start()
        s = session_step(s, 0.1, mover=LimitRole.FALSIFIER)
        s = run_engine(s)
        assert s.bound == pytest.approx(math.sqrt(9.1) - 3, rel=1e-15)
        s = session_step(s, 2.99, mover=LimitRole.FALSIFIER)
        assert s.matrix_holds is True
        assert s.deviation == pytest.approx(0.0599, abs=1e-12)
        assert s.winner is LimitRole.VERIFIER

    def test_x_outside_window_rejected_distinctly(self):
        s = self._start()
        s = session_step(s, 1.0, mover=LimitRole.FALSIFIER)
        s = run_engine(s)
        with pytest.raises(OutOfWindowError):
            session_step(s, 3.5, mover=LimitRole.FALSIFIER)
        with pytest.raises(OutOfWindowError):
            session_step(s, 3.0, mover=LimitRole.FALSIFIER)  # x = x0
        assert s.phase is Phase.CHOOSE_X  # unchanged

    def test_nonpositive_eps_rejected(self):
        s = self._start()
        with pytest.raises(NonpositiveValueError):
            session_step(s, 0.0, mover=LimitRole.FALSIFIER)
        with pytest.raises(NonpositiveValueError):
            session_step(s, -1.0, mover=LimitRole.FALSIFIER)

    def test_wrong_mover_rejected(self):
        s = self._start()
        with pytest.raises(WrongMoverError):
            session_step(s, 1.0, mover=LimitRole.VERIFIER)

    def test_session_over(self):
        s = self._start()
        s = session_step(s, 1.0, mover=LimitRole.FALSIFIER)
        s = run_engine(s)
        s = session_step(s, 2.9, mover=LimitRole.FALSIFIER)
        with pytest.raises(SessionOverError):
            session_step(s, 1.0)

    def test_scheme_matches_formula(self):
        assert self._start().scheme == "∃∀∃∀"

    def test_engine_as_falsifier_concedes_on_true_claim(self):
        s = new_session(LimitKind.FUNCTION_AT_POINT, "x^2", x0=3.0, a=9.0,
                        human_role=LimitRole.VERIFIER)
        s = run_engine(s)  # engine plays ε
        assert s.phase is Phase.CHOOSE_DELTA
        s = session_step(s, 0.99 * (math.sqrt(9 + s.eps) - 3),
                         mover=LimitRole.VERIFIER)
        s = run_engine(s)  # engine tries to find a violating x
        assert s.phase is Phase.DONE
        assert s.winner is LimitRole.VERIFIER


class TestSequenceSession:
    def test_engine_supplies_analytic_n(self):
        s = new_session(LimitKind.SEQUENCE, "1/n", a=0.0,
                        human_role=LimitRole.FALSIFIER)
        s = session_step(s, 0.1, mover=LimitRole.FALSIFIER)
        s = run_engine(s)
        assert s.bound == 10.0
        s = session_step(s, 11, mover=LimitRole.FALSIFIER)
        assert s.winner is LimitRole.VERIFIER

    def test_index_not_beyond_n_rejected(self):
        s = new_session(LimitKind.SEQUENCE, "1/n", a=0.0,
                        human_role=LimitRole.FALSIFIER)
        s = session_step(s, 0.1, mover=LimitRole.FALSIFIER)
        s = run_engine(s)
        with pytest.raises(IndexNotBeyondNError):
            session_step(s, 10, mover=LimitRole.FALSIFIER)


class TestDivergenceSession:
    def test_engine_as_falsifier_wins_the_negated_game(self):
        s = new_session(LimitKind.SEQUENCE, "1/n", a=1.0, divergence=True,
                        human_role=LimitRole.VERIFIER)
        s = run_engine(s)
        assert s.eps == 0.5  # |0 - 1| / 2 from the registry
        assert s.phase is Phase.CHOOSE_N
        s = session_step(s, 7, mover=LimitRole.VERIFIER)
        s = run_engine(s)
        assert s.phase is Phase.DONE
        assert s.sample == 8.0
        assert s.matrix_holds is False  # |a - a_n| >= ε: the disputer wins
        assert s.winner is LimitRole.FALSIFIER

    @pytest.mark.parametrize("n_choice", [0, 1, 7, 1000, 10 ** 6])
    def test_any_human_n_loses(self, n_choice):
        s = new_session(LimitKind.SEQUENCE, "1/n", a=1.0, divergence=True,
                        human_role=LimitRole.VERIFIER)
        s = run_engine(s)
        s = session_step(s, n_choice, mover=LimitRole.VERIFIER)
        s = run_engine(s)
        assert s.winner is LimitRole.FALSIFIER
        assert s.sample > n_choice
        assert abs(1.0 - 1.0 / s.sample) >= 0.5

    def test_divergence_scheme_is_flipped(self):
        s = new_session(LimitKind.SEQUENCE, "1/n", a=1.0, divergence=True)
        assert s.scheme == "∀∃∀∃"


class TestInfinitySession:
    def test_registered_tail(self):
        s = new_session(LimitKind.FUNCTION_AT_INFINITY, "1/x", a=0.0,
                        human_role=LimitRole.FALSIFIER)
        s = session_step(s, 0.25, mover=LimitRole.FALSIFIER)
        s = run_engine(s)
        assert s.bound == 4.0
        with pytest.raises(OutOfWindowError):
            session_step(s, 3.0, mover=LimitRole.FALSIFIER)
        s = session_step(s, 100.0, mover=LimitRole.FALSIFIER)
        assert s.winner is LimitRole.VERIFIER
