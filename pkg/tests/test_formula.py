import random
from fractions import Fraction

import pytest

from qarena.formula import (
    Abs,
    BinOp,
    Call,
    Cmp,
    Const,
    Formula,
    FormulaError,
    FormulaSyntaxError,
    Quantifier,
    QuantifierKind,
    Var,
    eval_formula,
    negate,
    parse_formula,
    render,
    scheme_of,
)

from gen_formula import random_formula

SEQ_LIMIT = ("exists a:R. forall eps>0. exists N:Nat. forall n>N. "
             "abs(a - seq(n)) < eps")
INF_LIMIT = ("exists a. forall eps>0. exists M:R. forall x:R. "
             "(x >= M) -> abs(f(x) - a) < eps")


class TestParse:
    def test_sequence_limit_prefix(self):
        f = parse_formula(SEQ_LIMIT)
        kinds = [q.kind for q in f.prefix]
        assert kinds == [QuantifierKind.EXISTS, QuantifierKind.FORALL,
                         QuantifierKind.EXISTS, QuantifierKind.FORALL]
        assert [q.var for q in f.prefix] == ["a", "eps", "N", "n"]
        assert f.prefix[0].sort == "R"
        assert f.prefix[1].bound == (">", Const(Fraction(0)))
        assert f.prefix[3].bound == (">", Var("N"))
        assert f.matrix == Cmp("<", Abs(BinOp("-", Var("a"),
                                              Call("seq", (Var("n"),)))),
                               Var("eps"))

    def test_single_quantifier(self):
        f = parse_formula("forall x:R. p(x) < 1")
        assert len(f.prefix) == 1
        assert scheme_of(f) == "∀"

    def test_limit_at_infinity_implication_is_rewritten(self):
        f = parse_formula(INF_LIMIT)
        assert [q.var for q in f.prefix] == ["a", "eps", "M", "x"]
        # (A -> B) is stored as (not A) or B, with the comparison flipped.
        assert f.matrix.items[0] == Cmp("<", Var("x"), Var("M"))

    def test_syntax_error_carries_position(self):
        with pytest.raises(FormulaSyntaxError) as err:
            parse_formula("exists a. forall eps>0. abs(a -) < eps")
        assert err.value.line == 1
        assert err.value.column is not None

    def test_non_prenex_rejected_with_message(self):
        with pytest.raises(FormulaSyntaxError, match="prenex"):
            parse_formula("exists a. a < 1 and forall b. b < a")

    def test_duplicate_variable_rejected(self):
        with pytest.raises(FormulaError, match="distinct"):
            parse_formula("exists a. forall a. a < 1")

    def test_bound_referencing_later_variable_rejected(self):
        with pytest.raises(FormulaError, match="not-yet-bound"):
            parse_formula("exists n>N. forall N:Nat. n < 1")

    def test_matrix_must_be_boolean(self):
        with pytest.raises(FormulaSyntaxError):
            parse_formula("exists a. a + 1")

    def test_comparison_chains_rejected(self):
        with pytest.raises(FormulaSyntaxError):
            parse_formula("forall a. 0 < a < 1")


class TestNegate:
    def test_remark3_negation_with_absorption(self):
        f = parse_formula(INF_LIMIT)
        neg = negate(f, absorb_bounds=True)
        expected = parse_formula(
            "forall a. exists eps>0. forall M:R. exists x:R>=M. "
            "abs(f(x) - a) >= eps")
        assert neg == expected
        assert scheme_of(neg) == "∀∃∀∃"

    def test_remark3_negation_without_absorption(self):
        f = parse_formula(INF_LIMIT)
        neg = negate(f)
        expected = parse_formula(
            "forall a. exists eps>0. forall M:R. exists x:R. "
            "(x >= M) and (abs(f(x) - a) >= eps)")
        assert neg == expected

    def test_short_definition_negation(self):
        f = parse_formula("exists N:Nat. forall n>N. abs(a - a_n) < eps")
        neg = negate(f)
        expected = parse_formula(
            "forall N:Nat. exists n>N. abs(a - a_n) >= eps")
        assert neg == expected

    def test_double_negation_is_identity(self):
        f = parse_formula(INF_LIMIT)
        assert negate(negate(f)) == f

    def test_involution_on_generated_formulas(self):
        rng = random.Random(4242)
        for _ in range(300):
            f = random_formula(rng)
            assert negate(negate(f)) == f

    def test_scheme_flip_on_generated_formulas(self):
        rng = random.Random(9)
        swap = {"∃": "∀", "∀": "∃"}
        for _ in range(200):
            f = random_formula(rng)
            flipped = "".join(swap[c] for c in scheme_of(f))
            assert scheme_of(negate(f)) == flipped


class TestScheme:
    def test_full_definition(self):
        assert scheme_of(parse_formula(SEQ_LIMIT)) == "∃∀∃∀"

    def test_short_definition(self):
        f = parse_formula("exists N:Nat. forall n>N. abs(a - a_n) < eps")
        assert scheme_of(f) == "∃∀"

    def test_negated_full_definition(self):
        assert scheme_of(negate(parse_formula(SEQ_LIMIT))) == "∀∃∀∃"


class TestRender:
    def test_ascii_round_trips_paper_formulas(self):
        for text in (SEQ_LIMIT, INF_LIMIT):
            f = parse_formula(text)
            assert parse_formula(render(f, "ascii")) == f

    def test_unicode_style(self):
        f = parse_formula("exists a. forall eps>0. abs(f(x) - a) < eps")
        u = render(f, "unicode")
        assert u.startswith("∃a ∀ε>0")
        assert "|f(x) - a| < ε" in u

    def test_unicode_sorts_and_bounds(self):
        f = parse_formula(SEQ_LIMIT)
        u = render(f, "unicode")
        assert "∃a∈ℝ" in u and "∃N∈ℕ" in u and "∀n>N" in u

    def test_round_trip_on_generated_formulas(self):
        rng = random.Random(1234)
        for _ in range(100):
            f = random_formula(rng)
            text = render(f, "ascii")
            assert parse_formula(text) == f, text

    def test_rejects_unknown_style(self):
        with pytest.raises(ValueError):
            render(parse_formula("forall x. x < 1"), "latex")


class TestFiniteModels:
    def test_negation_always_disagrees(self):
        rng = random.Random(77)
        domain = range(5)
        checked = 0
        while checked < 120:
            f = random_formula(rng, eval_safe=True)
            free = sorted(
                {v for v in _free_vars(f)} )
            env = {name: rng.randint(0, 4) for name in free}
            value = eval_formula(f, domain, env=env)
            negated = eval_formula(negate(f), domain, env=env)
            assert value != negated, (render(f), env)
            checked += 1

    def test_simple_truth(self):
        f = parse_formula("exists x. forall y. x <= y")
        assert eval_formula(f, range(5)) is True
        g = parse_formula("forall x. exists y. y < x")
        assert eval_formula(g, range(5)) is False  # no y < 0

    def test_bounds_filter_domains(self):
        f = parse_formula("forall x>3. x >= 4")
        assert eval_formula(f, range(5)) is True
        g = parse_formula("exists x>4. x = x")
        assert eval_formula(g, range(5)) is False  # empty range


def _free_vars(f: Formula):
    from qarena.formula.ast import matrix_vars

    bound = {q.var for q in f.prefix}
    out = matrix_vars(f.matrix) - bound
    for q in f.prefix:
        if q.bound is not None:
            from qarena.formula.ast import term_vars
            out |= term_vars(q.bound[1]) - bound
    return out
