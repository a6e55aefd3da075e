from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semlogic import logic
from semlogic.errors import CapExceeded, StatementSyntaxError, VarOutOfRange
from semlogic.kernels import Kernel
from semlogic.logic import And, Implies, Not, Or, Var

from .conftest import kernels, statement_with_m, statements

X1, X2, X3 = Var(1), Var(2), Var(3)


def K(m, *worlds):
    return Kernel.from_worlds(m, worlds)


class TestParse:
    def test_conjunction(self):
        assert logic.parse("X1 & X2", 2) == And(X1, X2)

    def test_implication_is_right_associative(self):
        assert logic.parse("!X1 -> X2 -> X3", 3) == Implies(Not(X1), Implies(X2, X3))

    def test_variable_out_of_range(self):
        with pytest.raises(VarOutOfRange):
            logic.parse("X3", 2)
        with pytest.raises(VarOutOfRange):
            logic.parse("X0", 2)

    @pytest.mark.parametrize(
        "text, expected",
        [
            ("X1 | X2 & X3", Or(X1, And(X2, X3))),
            ("X1 & X2 & X3", And(And(X1, X2), X3)),
            ("X1 | X2 | X3", Or(Or(X1, X2), X3)),
            ("X1 | X2 -> X3", Implies(Or(X1, X2), X3)),
            ("!X1 & X2", And(Not(X1), X2)),
            ("!(X1 & X2)", Not(And(X1, X2))),
            ("!!X1", Not(Not(X1))),
            ("(X1 -> X2) -> X3", Implies(Implies(X1, X2), X3)),
            ("X1->X2", Implies(X1, X2)),
        ],
    )
    def test_precedence(self, text, expected):
        assert logic.parse(text, 3) == expected

    def test_unicode_aliases(self):
        assert logic.parse("¬X1 ∧ (X2 ∨ X3) ⟹ X1", 3) == logic.parse("!X1 & (X2 | X3) -> X1", 3)

    @pytest.mark.parametrize(
        "text, position",
        [("X1 &", 4), ("(X1", 3), ("X1 X2", 3), ("& X1", 0), ("X1 ? X2", 3), ("", 0), ("X1 )", 3)],
    )
    def test_syntax_errors_report_position(self, text, position):
        with pytest.raises(StatementSyntaxError) as err:
            logic.parse(text, 3)
        assert err.value.position == position

    def test_corpus(self):
        stmts = logic.load_corpus(Path(__file__).parent / "data" / "corpus.txt", 3)
        assert len(stmts) == 6
        assert stmts[2] == And(Or(X1, X2), Not(X3))

    @given(statement_with_m())
    def test_print_parse_roundtrip(self, case):
        m, s = case
        assert logic.parse(logic.to_text(s), m) == s


class TestEval:
    def test_examples(self):
        conj = And(X1, X2)
        assert logic.evaluate(conj, 3) is True
        assert logic.evaluate(conj, 1) is False
        assert logic.evaluate(Implies(X1, X2), 0) is True

    def test_bit_order(self):
        # world 2 = binary 10: X1 false, X2 true
        assert not logic.evaluate(X1, 2) and logic.evaluate(X2, 2)


class TestKernel:
    def test_conjunction_quarter(self):
        k = logic.kernel_of(And(X1, X2), 2)
        assert k.worlds() == [3]
        assert k.normalized_size() == 0.25

    def test_fig_sizes(self):
        # a disjunction, a literal and a conjunction over two variables
        assert logic.kernel_of(Or(X1, X2), 2).normalized_size() == 0.75
        assert logic.kernel_of(X1, 2).worlds() == [1, 3]
        assert logic.kernel_of(X1, 2).normalized_size() == 0.5

    def test_contradiction(self):
        assert logic.kernel_of(And(X1, Not(X1)), 2).worlds() == []

    def test_cap(self):
        with pytest.raises(CapExceeded):
            logic.kernel_of(X1, 25)
        with pytest.raises(CapExceeded):
            logic.kernel_of(X1, 5, cap=4)

    def test_statement_exceeding_m(self):
        with pytest.raises(VarOutOfRange):
            logic.kernel_of(X3, 2)

    @given(statement_with_m())
    def test_matches_pointwise_eval(self, case):
        m, s = case
        k = logic.kernel_of(s, m)
        assert k.worlds() == [w for w in range(1 << m) if logic.evaluate(s, w)]

    def test_conjunction_is_intersection(self):
        assert logic.kernel_of(And(X1, X2), 2) == logic.kernel_of(X1, 2) & logic.kernel_of(X2, 2)


class TestEntailment:
    def test_examples(self):
        assert logic.entails(And(X1, X2), X1, 2)
        assert not logic.entails(X1, And(X1, X2), 2)
        assert logic.entails(And(X1, Not(X1)), X2, 2)

    @given(st.integers(1, 6).flatmap(lambda m: st.tuples(st.just(m), statements(m), statements(m))))
    def test_brute_force_oracle(self, case):
        m, a, b = case
        brute = all((not logic.evaluate(a, w)) or logic.evaluate(b, w) for w in range(1 << m))
        assert logic.entails(a, b, m) == brute

    @given(st.integers(1, 5).flatmap(lambda m: st.tuples(st.just(m), statements(m), statements(m), statements(m))))
    def test_preorder(self, case):
        m, a, b, c = case
        assert logic.entails(a, a, m)
        if logic.entails(a, b, m) and logic.entails(b, c, m):
            assert logic.entails(a, c, m)


class TestEquivalentAndSynthesize:
    def test_equivalent_examples(self):
        assert logic.equivalent(Implies(X1, X2), Or(Not(X1), X2), 2)
        assert not logic.equivalent(X1, X2, 2)

    def test_single_minterm(self):
        assert logic.synthesize(K(2, 3)) == And(X1, X2)

    def test_designated_constants(self):
        assert logic.synthesize(K(2)) == And(X1, Not(X1))
        assert logic.synthesize(Kernel.full(2)) == Or(X1, Not(X1))

    def test_minterm_order(self):
        s = logic.synthesize(K(2, 1, 3))
        assert s == Or(And(X1, Not(X2)), And(X1, X2))
        assert logic.kernel_of(s, 2) == K(2, 1, 3)
        assert logic.equivalent(s, X1, 2)

    @given(kernels(max_m=8))
    @settings(max_examples=60)
    def test_synthesis_roundtrip(self, k):
        assert logic.kernel_of(logic.synthesize(k), k.m) == k

    @given(statement_with_m(max_m=8))
    def test_equivalent_to_own_synthesis(self, case):
        m, s = case
        assert logic.equivalent(s, logic.synthesize(logic.kernel_of(s, m)), m)
