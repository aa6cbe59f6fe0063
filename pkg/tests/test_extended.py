import itertools
import random

import pytest

from corpus import corpus
from tabcheck.extended import (
    EAll, EAnd, EBot, EEx, EFun, EIff, EImp, ENeg, EOr, EPred, ETop, EVar, LengthMismatch, eform_symbols,
    extended_env, interpret_eform, interpret_eterm, translate_eform, translate_eform_aux, translate_eterm,
)
from tabcheck.randgen import ESIG, random_eform, random_eterm, random_model
from tabcheck.semantics import FiniteModel, FreeEnv, interpret_form, interpret_term
from tabcheck.syntax import BOT, All, BoundVar, FreeVar, Fun, Neg, Or, Pred, is_closed

c = EFun("c")


def p(*args):
    return EPred("p", args)


class TestTranslation:
    def test_terms(self):
        assert translate_eterm(["x"], EVar("x")) == BoundVar(0)
        assert translate_eterm([], EVar("Z")) == FreeVar("Z")
        assert translate_eterm(["y", "x"], EVar("x")) == BoundVar(1)
        assert translate_eterm(["x", "x"], EVar("x")) == BoundVar(0)
        assert translate_eterm([], EFun("f", (c,))) == Fun("f", (Fun("c"),))

    def test_forms(self):
        assert translate_eform(EAll("x", p(EVar("x")))) == All(Pred("p", (BoundVar(0),)))
        Pc = Pred("p", (Fun("c"),))
        assert translate_eform(EImp(p(c), p(c))) == Or(Neg(Pc), Pc)
        assert translate_eform(EEx("y", EPred("d", (EVar("y"),)))) == Neg(All(Neg(Pred("d", (BoundVar(0),)))))

    def test_connective_encodings(self):
        A, B = EPred("a"), EPred("b")
        a, b = Pred("a"), Pred("b")
        assert translate_eform(ETop()) == Neg(BOT)
        assert translate_eform(EBot()) == BOT
        assert translate_eform(EAnd(A, B)) == Neg(Or(Neg(a), Neg(b)))
        assert translate_eform(EIff(A, B)) == translate_eform(EAnd(EImp(A, B), EImp(B, A)))
        assert translate_eform(EOr(A, ENeg(B))) == Or(a, Neg(b))

    def test_shadowing(self):
        F = EAll("x", EAll("x", p(EVar("x"))))
        assert translate_eform(F) == All(All(Pred("p", (BoundVar(0),))))
        G = EAll("x", EAll("y", EPred("r", (EVar("x"), EVar("y")))))
        assert translate_eform(G) == All(All(Pred("r", (BoundVar(1), BoundVar(0)))))


class TestSemantics:
    M = FiniteModel.build(2, preds={("p", 1): lambda x: True})

    def test_examples(self):
        assert interpret_eform(self.M, {}, EBot()) is False
        assert interpret_eform(self.M, {}, ETop()) is True
        assert interpret_eform(self.M, {}, EAll("x", p(EVar("x"))))

    def test_extended_env(self):
        sigma = FreeEnv({"z": 1})
        assert extended_env([], [], sigma)["z"] == 1
        assert extended_env(["x"], [0], sigma)["x"] == 0
        assert extended_env(["x", "x"], [1, 0], sigma)["x"] == 1
        with pytest.raises(LengthMismatch):
            extended_env(["x"], [], sigma)


def _instance(rng):
    n = rng.randint(1, 3)
    M = random_model(rng, n, ESIG.funs, ESIG.preds)
    k = rng.randint(0, 3)
    bvs = [rng.choice("XYZW") for _ in range(k)]
    rho = [rng.randrange(n) for _ in range(k)]
    sigma = FreeEnv({x: rng.randrange(n) for x in ("U", "V")})
    return M, bvs, rho, sigma


class TestCorrespondence:
    def test_terms(self):
        rng = random.Random(21)
        for _ in range(400):
            M, bvs, rho, sigma = _instance(rng)
            t = random_eterm(rng, ESIG, bvs, 3)
            assert interpret_term(M, rho, sigma, translate_eterm(bvs, t)) == \
                interpret_eterm(M, extended_env(bvs, rho, sigma), t)

    def test_forms(self):
        rng = random.Random(22)
        for _ in range(400):
            M, bvs, rho, sigma = _instance(rng)
            F = random_eform(rng, ESIG, 4, tuple(bvs))
            assert interpret_form(M, rho, sigma, translate_eform_aux(bvs, F)) == \
                interpret_eform(M, extended_env(bvs, rho, sigma), F)


def _models(funs, preds, n):
    """Every model of the signature over domain ``range(n)``, by brute force."""
    fkeys, pkeys = sorted(funs.items()), sorted(preds.items())
    fspace = [itertools.product(range(n), repeat=n ** k) for _, k in fkeys]
    pspace = [itertools.product((False, True), repeat=n ** k) for _, k in pkeys]
    for ft in itertools.product(*map(list, fspace)):
        for pt in itertools.product(*map(list, pspace)):
            yield FiniteModel(n, dict(zip(fkeys, ft)), dict(zip(pkeys, pt)))


class TestExtendedSoundness:
    def test_accepted_certificates_are_valid_in_extended_semantics(self):
        checked = 0
        for e in corpus()[:80]:
            if e.certificate is None:
                continue
            forms = list(e.problem.axioms) + [e.problem.conjecture]
            funs, preds = {}, {}
            for F in forms:
                f, q = eform_symbols(F)
                funs.update(f)
                preds.update(q)
            for n in (1, 2):
                for M in _models(funs, preds, n):
                    if all(interpret_eform(M, {}, A) for A in e.problem.axioms):
                        assert interpret_eform(M, {}, e.problem.conjecture)
            checked += 1
        assert checked >= 60

    def test_phi_translation_is_closed(self):
        from tabcheck.tptp import gen_phi
        assert is_closed(translate_eform(gen_phi(1)))
