import pytest
from hypothesis import given, settings, strategies as st

from strategies import FREE, forms, substitutions, terms
from tabcheck.syntax import (
    BOT, All, BoundVar, FreeVar, Fun, InconsistentArity, Neg, Or, Pred, bv, check_substitution,
    const, function_symbols, fv, is_closed, is_locally_closed, open_var, signature, subst,
)

a, c = const("a"), const("c")
X, Y, Z = FreeVar("X"), FreeVar("Y"), FreeVar("Z")


def P(*args):
    return Pred("P", args)


class TestOpen:
    def test_index_shifts_under_binder(self):
        F = All(Pred("R", (a, Z, BoundVar(1), BoundVar(0))))
        assert open_var(F, 0, c) == All(Pred("R", (a, Z, c, BoundVar(0))))

    def test_direct_hit(self):
        assert open_var(BoundVar(0), 0, X) == X

    def test_other_indices_untouched(self):
        assert open_var(P(BoundVar(1)), 0, X) == P(BoundVar(1))
        assert open_var(P(BoundVar(1)), 1, X) == P(X)

    def test_nested_binders(self):
        F = All(All(Pred("R", (BoundVar(2), BoundVar(1)))))
        assert open_var(F, 0, c) == All(All(Pred("R", (c, BoundVar(1)))))

    @given(forms(0, 3))
    def test_identity_without_bound_variables(self, F):
        assert open_var(F, 0, c) == F

    @given(forms(1, 3), terms(0, 2))
    def test_opening_a_body_closes_it(self, body, u):
        assert is_locally_closed(All(body))
        assert is_locally_closed(open_var(body, 0, u))

    def test_negative_index_rejected(self):
        with pytest.raises(ValueError):
            BoundVar(-1)


class TestVariables:
    def test_fv_worked_example(self):
        assert fv(Pred("R", (a, Z, BoundVar(1), BoundVar(0)))) == {"Z"}

    def test_fv_basic(self):
        assert fv(BOT) == set()
        assert fv(Or(P(X), Neg(P(Y)))) == {"X", "Y"}
        assert fv([P(X), Neg(Pred("Q", (Fun("f", (Z,)),)))]) == {"X", "Z"}

    def test_bv(self):
        assert bv(All(P(BoundVar(0)))) == set()
        assert bv(P(BoundVar(2))) == {2}
        assert bv(All(P(BoundVar(1), BoundVar(0)))) == {0}
        assert bv(All(All(P(BoundVar(3))))) == {1}

    def test_closure_predicates(self):
        assert is_locally_closed(All(P(BoundVar(0))))
        assert not is_closed(P(X))
        assert is_closed(All(P(BoundVar(0))))
        assert not is_locally_closed(P(BoundVar(0)))

    @given(forms(0, 4))
    def test_locally_closed_iff_no_bv(self, F):
        assert is_locally_closed(F) == (bv(F) == set())
        assert is_closed(F) == (fv(F) == set())


class TestSubst:
    def test_examples(self):
        assert subst(P(X), {"X": c}) == P(c)
        F = All(P(BoundVar(0), X))
        assert subst(F, {}) is F
        assert subst(F, {"X": Fun("f", (c,))}) == All(P(BoundVar(0), Fun("f", (c,))))

    def test_simultaneous(self):
        assert subst(P(X, Y), {"X": Y, "Y": X}) == P(Y, X)

    @given(forms(0, 3), substitutions())
    def test_fv_bound(self, F, sigma):
        rng_fv = fv(list(sigma.values())) if sigma else set()
        assert fv(subst(F, sigma)) <= (fv(F) - set(sigma)) | rng_fv

    @given(forms(0, 3), substitutions())
    def test_identity_outside_support(self, F, sigma):
        if not fv(F) & set(sigma):
            assert subst(F, sigma) == F

    @settings(max_examples=300)
    @given(forms(1, 3), terms(0, 2), substitutions())
    def test_open_subst_commute(self, body, u, sigma):
        assert subst(open_var(body, 0, u), sigma) == open_var(subst(body, sigma), 0, subst(u, sigma))

    def test_check_substitution(self):
        check_substitution({"X": c})
        with pytest.raises(ValueError):
            check_substitution({"X": BoundVar(0)})
        with pytest.raises(TypeError):
            check_substitution({"X": P(c)})


class TestSymbols:
    def test_function_symbols(self):
        assert function_symbols(P(Fun("f", (c,)))) == {"f", "c"}
        assert function_symbols(BOT) == set()
        assert function_symbols([P(a), Neg(Pred("Q", (const("b"),)))]) == {"a", "b"}

    def test_signature(self):
        funs, preds = signature([P(Fun("f", (c,))), Pred("R", (X, X))])
        assert funs == {"f": 1, "c": 0}
        assert preds == {"P": 1, "R": 2}

    def test_inconsistent_arity(self):
        with pytest.raises(InconsistentArity):
            signature(Or(P(c), P(c, c)))
        with pytest.raises(InconsistentArity):
            signature(P(Fun("f", (c,)), Fun("f", ())))


class TestEquality:
    @given(forms(0, 3), forms(0, 3))
    def test_structural(self, F, G):
        assert (F == G) == (repr(F) == repr(G))
        if F == G:
            assert hash(F) == hash(G)

    @given(st.sampled_from(FREE))
    def test_hashable_in_sets(self, x):
        assert len({P(FreeVar(x)), P(FreeVar(x))}) == 1
