import random

import pytest

from tabcheck.randgen import random_model, random_skolem_candidate
from tabcheck.semantics import FiniteModel, FreeEnv, interpret_form
from tabcheck.skolem import (
    EMPTY_RECORD, INNER, OUTER, PREINNER, ConflictingAssoc, NotSkolemTerm,
    SkolemStrategy, check_requirement4, get_strategy,
)
from tabcheck.syntax import All, BoundVar, FreeVar, Fun, Neg, Or, Pred, const, open_var

X, Y = FreeVar("X"), FreeVar("Y")
STRATS = [OUTER, INNER, PREINNER]


def P(*args):
    return Pred("P", args)


# Neg(All F) with fv = {X}
TARGET = Neg(All(Pred("R", (X, BoundVar(0)))))


class TestIsSko:
    def test_outer_over_branch(self):
        t = Fun("sk1", (X, Y))
        assert OUTER.is_sko(t, TARGET, EMPTY_RECORD, {"X", "Y"}, {"f"})
        assert not OUTER.is_sko(Fun("f", (X, Y)), TARGET, EMPTY_RECORD, {"X", "Y"}, {"f"})

    def test_inner_uses_formula_variables(self):
        t = Fun("sk1", (X,))
        assert INNER.is_sko(t, TARGET, EMPTY_RECORD, {"X", "Y"}, set())
        assert not OUTER.is_sko(t, TARGET, EMPTY_RECORD, {"X", "Y"}, set())

    def test_canonical_order_and_duplicates(self):
        assert not OUTER.is_sko(Fun("sk", (Y, X)), TARGET, EMPTY_RECORD, {"X", "Y"}, set())
        assert not INNER.is_sko(Fun("sk", (X, X)), TARGET, EMPTY_RECORD, {"X"}, set())

    def test_malformed_terms(self):
        for s in STRATS:
            assert not s.is_sko(X, TARGET, EMPTY_RECORD, {"X"}, set())
            assert not s.is_sko(Fun("sk", (Fun("c"),)), TARGET, EMPTY_RECORD, {"X"}, set())
            assert not s.is_sko(Fun("sk", (X,)), P(X), EMPTY_RECORD, {"X"}, set())

    def test_record_blocks_reuse(self):
        rec = INNER.add_symbol(EMPTY_RECORD, "sk1", TARGET)
        assert INNER.violation(Fun("sk1", (X,)), TARGET, rec, {"X"}, set()) == "skolem symbol not fresh"

    def test_preinner_reuses_recorded_symbol(self):
        rec = PREINNER.add_symbol(EMPTY_RECORD, "sk1", TARGET)
        assert PREINNER.is_sko(Fun("sk1", (X,)), TARGET, rec, {"X"}, {"sk1"})
        assert not PREINNER.is_sko(Fun("sk2", (X,)), TARGET, rec, {"X"}, set())
        # make_term is deterministic on the same formula
        assert PREINNER.make_term(TARGET, rec, {"X"}, set()) == Fun("sk1", (X,))

    def test_violation_names_expected_arguments(self):
        assert OUTER.violation(Fun("sk", (X,)), TARGET, EMPTY_RECORD, {"X", "Y"}, set()) == \
            "skolem arguments must be (X Y)"


class TestRecord:
    def test_symbol_and_args(self):
        assert SkolemStrategy.symbol(Fun("sk1", (X,))) == "sk1"
        assert SkolemStrategy.args(Fun("sk1", (X, Y))) == [X, Y]
        with pytest.raises(NotSkolemTerm):
            SkolemStrategy.symbol(X)
        with pytest.raises(NotSkolemTerm):
            SkolemStrategy.args(X)

    def test_add_symbol(self):
        G = Neg(All(P(BoundVar(0))))
        assert INNER.add_symbol(EMPTY_RECORD, "sk1", G).used == {"sk1"}
        assert INNER.add_symbol(EMPTY_RECORD, "sk1", G).assoc == {}
        r1 = PREINNER.add_symbol(EMPTY_RECORD, "sk1", G)
        r2 = PREINNER.add_symbol(r1, "sk1", G)
        assert r1 == r2 and r2.assoc[G] == "sk1"
        with pytest.raises(ConflictingAssoc):
            PREINNER.add_symbol(r1, "sk2", G)

    def test_records_are_immutable(self):
        G = Neg(All(P(BoundVar(0))))
        PREINNER.add_symbol(EMPTY_RECORD, "sk1", G)
        assert EMPTY_RECORD.used == frozenset() and EMPTY_RECORD.assoc == {}

    def test_get_strategy(self):
        assert get_strategy("inner") is INNER
        assert get_strategy("pre-inner") is PREINNER
        assert get_strategy(OUTER) is OUTER
        with pytest.raises(ValueError):
            get_strategy("delta-star")


@pytest.mark.parametrize("strategy", STRATS, ids=lambda s: s.name)
class TestRequirements:
    def test_requirements_1_to_3(self, strategy):
        rng = random.Random(7)
        valid = 0
        for _ in range(300):
            c = random_skolem_candidate(rng, strategy)
            if not strategy.is_sko(c.term, c.target, c.record, c.branch_fvs, c.funcs):
                continue
            valid += 1
            t = c.term
            assert t == Fun(strategy.symbol(t), tuple(strategy.args(t)))
            assert all(isinstance(a, FreeVar) for a in strategy.args(t))
            sub = frozenset(s for s in c.funcs if rng.random() < 0.5)
            assert strategy.is_sko(t, c.target, c.record, c.branch_fvs, sub)
        assert valid > 100

    def test_requirement_4(self, strategy):
        rng = random.Random(11)
        for _ in range(60):
            c = random_skolem_candidate(rng, strategy, valid_bias=1.0)
            F = c.target.body.body
            n = rng.randint(1, 3)
            M = random_model(rng, n, {"a": 0, "f": 1, "g": 2}, {"P": 1, "Q": 0, "R": 2})
            mu = FreeEnv({x: rng.randrange(n) for x in ("X", "Y", "Z", "W")})
            tests = [c.target, Or(P(X), Neg(P(Y))), All(P(BoundVar(0)))]
            M2 = check_requirement4(strategy, M, c.term, F, mu, record=c.record,
                                    branch_fvs=c.branch_fvs, funcs=c.funcs, tests=tests)
            if interpret_form(M, [], mu, c.target):
                assert interpret_form(M2, [], mu, Neg(open_var(F, 0, c.term)))


class TestRequirement4:
    M = FiniteModel.build(2, preds={("P", 1): lambda x: x == 0})

    def test_picks_falsifying_witness(self):
        M2 = check_requirement4(INNER, self.M, Fun("sk"), P(BoundVar(0)), FreeEnv())
        assert M2.funs[("sk", 0)] == (1,)
        assert interpret_form(M2, [], FreeEnv(), Neg(P(Fun("sk"))))

    def test_vacuous_when_no_witness(self):
        M = FiniteModel.build(2, preds={("P", 1): lambda x: True})
        M2 = check_requirement4(INNER, M, Fun("sk"), P(BoundVar(0)), FreeEnv())
        assert M2.funs[("sk", 0)] == (0,)

    def test_invalid_term_rejected_upstream(self):
        with pytest.raises(NotSkolemTerm):
            check_requirement4(INNER, self.M, Fun("P"), P(BoundVar(0)), FreeEnv(), funcs={"P"})

    def test_formulas_mentioning_the_symbol_are_exempt(self):
        M = FiniteModel.build(2, funs={("sk", 0): lambda: 0}, preds={("P", 1): lambda x: x == 0})
        M2 = check_requirement4(INNER, M, Fun("sk"), P(BoundVar(0)), FreeEnv(), funcs=set(),
                                tests=[P(Fun("sk"))])
        assert not interpret_form(M2, [], FreeEnv(), P(Fun("sk")))

    def test_unrelated_formulas_keep_truth(self):
        M = FiniteModel.build(2, funs={("c", 0): lambda: 0}, preds={("P", 1): lambda x: x == 0})
        M2 = check_requirement4(OUTER, M, Fun("sk", (X,)), P(BoundVar(0)), FreeEnv(), branch_fvs={"X"},
                                tests=[P(const("c"))])
        assert interpret_form(M2, [], FreeEnv(), P(const("c")))
        assert M2.funs[("sk", 1)] == (1, 1)
