"""Seeded random generators for terms, formulas, models and small problems.

Used by the property tests, the acceptance suite and the kernel benchmark.
Problem signatures are kept small enough that exhaustive model enumeration
at domain size 3 stays cheap: at most three predicates (at most one binary),
at most two function symbols of arity at most one, and no unary function
alongside a binary predicate.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .extended import EAll, EAnd, EBot, EEx, EFun, EIff, EImp, ENeg, EOr, EPred, ETop, EVar, eform_depth
from .semantics import FiniteModel
from .syntax import All, BOT, BoundVar, FreeVar, Fun, Neg, Or, Pred
from .tptp import TptpProblem, TptpUnit


# -- locally nameless ------------------------------------------------------------------

@dataclass(frozen=True)
class Signature:
    funs: dict  # symbol -> arity
    preds: dict

    @property
    def constants(self):
        return [f for f, k in self.funs.items() if k == 0]


DEFAULT_SIG = Signature({"a": 0, "f": 1, "g": 2}, {"P": 1, "Q": 0, "R": 2})


def random_term(rng: random.Random, sig: Signature, depth: int, nbound: int, free=("X", "Y", "Z"),
                dangling: int = 0):
    """Term whose bound indices are below ``nbound + dangling``."""
    leaves = []
    if nbound + dangling:
        leaves.append("bound")
    if free:
        leaves.append("free")
    consts = sig.constants
    if consts:
        leaves.append("const")
    funs = [f for f, k in sig.funs.items() if k > 0]
    if depth <= 0 or not funs or rng.random() < 0.5:
        pick = rng.choice(leaves or ["const"])
        if pick == "bound":
            return BoundVar(rng.randrange(nbound + dangling))
        if pick == "free":
            return FreeVar(rng.choice(list(free)))
        if consts:
            return Fun(rng.choice(consts), ())
        return FreeVar("X")
    f = rng.choice(funs)
    return Fun(f, tuple(random_term(rng, sig, depth - 1, nbound, free, dangling)
                        for _ in range(sig.funs[f])))


def random_form(rng: random.Random, sig: Signature = DEFAULT_SIG, depth: int = 4, nbound: int = 0,
                free=("X", "Y", "Z"), dangling: int = 0, term_depth: int = 2):
    """Formula that is locally closed under ``nbound`` binders when ``dangling`` is 0."""
    if depth <= 0 or rng.random() < 0.25:
        if rng.random() < 0.05:
            return BOT
        p = rng.choice(sorted(sig.preds))
        return Pred(p, tuple(random_term(rng, sig, term_depth, nbound, free, dangling)
                             for _ in range(sig.preds[p])))
    k = rng.randrange(3)
    if k == 0:
        return Neg(random_form(rng, sig, depth - 1, nbound, free, dangling, term_depth))
    if k == 1:
        return Or(random_form(rng, sig, depth - 1, nbound, free, dangling, term_depth),
                  random_form(rng, sig, depth - 1, nbound, free, dangling, term_depth))
    return All(random_form(rng, sig, depth - 1, nbound + 1, free, dangling, term_depth))


def random_model(rng: random.Random, n: int, funs: dict, preds: dict) -> FiniteModel:
    ftab = {(f, k): [rng.randrange(n) for _ in range(n ** k)] for f, k in funs.items()}
    ptab = {(p, k): [rng.random() < 0.5 for _ in range(n ** k)] for p, k in preds.items()}
    return FiniteModel(n, ftab, ptab)


def random_env(rng: random.Random, n: int, names=("X", "Y", "Z")) -> dict:
    return {x: rng.randrange(n) for x in names}


# -- named syntax ------------------------------------------------------------------------

ESIG = Signature({"a": 0, "f": 1, "g": 2}, {"p": 1, "q": 0, "r": 2})


def random_eterm(rng: random.Random, sig: Signature, scope, depth: int = 2, free=("U", "V")):
    funs = [f for f, k in sig.funs.items() if k > 0]
    if depth <= 0 or not funs or rng.random() < 0.55:
        names = list(scope) + list(free)
        consts = sig.constants
        if consts and (not names or rng.random() < 0.3):
            return EFun(rng.choice(consts))
        if names:
            return EVar(rng.choice(names))
        return EFun(rng.choice(consts)) if consts else EVar("U")
    f = rng.choice(funs)
    return EFun(f, tuple(random_eterm(rng, sig, scope, depth - 1, free) for _ in range(sig.funs[f])))


_BINDERS = ("X", "Y", "Z", "W")


def random_eform(rng: random.Random, sig: Signature = ESIG, depth: int = 4, scope=(),
                 free=("U", "V"), term_depth: int = 1):
    if depth <= 0 or rng.random() < 0.25:
        r = rng.random()
        if r < 0.04:
            return EBot()
        if r < 0.08:
            return ETop()
        p = rng.choice(sorted(sig.preds))
        return EPred(p, tuple(random_eterm(rng, sig, scope, term_depth, free) for _ in range(sig.preds[p])))
    k = rng.randrange(8)
    sub = lambda s=scope: random_eform(rng, sig, depth - 1, s, free, term_depth)  # noqa: E731
    if k == 0:
        return ENeg(sub())
    if k == 1:
        return EAnd(sub(), sub())
    if k == 2:
        return EOr(sub(), sub())
    if k == 3:
        return EImp(sub(), sub())
    if k == 4:
        return EIff(sub(), sub())
    x = rng.choice(_BINDERS)
    body = sub(scope + (x,))
    return EAll(x, body) if k in (5, 6) else EEx(x, body)


# -- problems ------------------------------------------------------------------------------

def problem_signature(rng: random.Random) -> Signature:
    """A signature within the enumeration-friendly limits described above."""
    preds = {}
    names = ["p", "q", "r"]
    rng.shuffle(names)
    for name in names[: rng.randint(1, 3)]:
        preds[name] = rng.choice((0, 1, 1, 1))
    if rng.random() < 0.35:
        preds[next(iter(preds))] = 2
    funs = {"a": 0}
    if 2 not in preds.values() and rng.random() < 0.6:
        funs["f"] = 1
    elif rng.random() < 0.4:
        funs["b"] = 0
    return Signature(funs, preds)


@dataclass(frozen=True)
class Problem:
    name: str
    axioms: tuple  # extended formulas
    conjecture: object  # extended formula or None

    def to_tptp(self) -> TptpProblem:
        units = [TptpUnit(f"ax{i}", "axiom", F) for i, F in enumerate(self.axioms)]
        if self.conjecture is not None:
            units.append(TptpUnit("goal", "conjecture", self.conjecture))
        return TptpProblem(tuple(units))


def _closed(rng, sig, depth, scope=()):
    return random_eform(rng, sig, depth, scope, free=(), term_depth=1)


def _ground_term(rng, sig):
    return random_eterm(rng, sig, (), 1, free=()) if sig.funs else None


def random_problem(rng: random.Random, index: int = 0, max_depth: int = 5) -> Problem:
    """A closed problem; most templates are valid schemata with random subformulas,
    the last one is an unconstrained random conjecture."""
    sig = problem_signature(rng)
    x = "X"
    while True:
        k = rng.randrange(11)
        A, B = _closed(rng, sig, 2), _closed(rng, sig, 2)
        phi = _closed(rng, sig, 2, (x,))
        t = _ground_term(rng, sig)
        if k == 0:
            axioms, conj = (), EOr(A, ENeg(A))
        elif k == 1:
            axioms, conj = (A, EImp(A, B)), B
        elif k == 2 and t is not None:
            axioms, conj = (EAll(x, phi),), _subst_e(phi, x, t)
        elif k == 3 and t is not None:
            axioms, conj = (_subst_e(phi, x, t),), EEx(x, phi)
        elif k == 4:
            axioms, conj = (), EEx(x, EImp(phi, EAll("Y0", _rename(phi, x, "Y0"))))
        elif k == 5:
            axioms, conj = (EAnd(A, B),), EAnd(B, A)
        elif k == 6:
            psi = _closed(rng, sig, 2, (x,))
            axioms = (EAll(x, EImp(phi, psi)), EAll(x, phi))
            conj = EAll(x, psi)
        elif k == 7:
            axioms, conj = (EOr(A, B), ENeg(A)), B
        elif k == 8:
            axioms, conj = (), EImp(A, EOr(A, B))
        elif k == 9:
            axioms, conj = (), EIff(ENeg(EAll(x, phi)), EEx(x, ENeg(phi)))
        else:
            axioms, conj = tuple(_closed(rng, sig, 3) for _ in range(rng.randint(0, 2))), _closed(rng, sig, 4)
        if k in (2, 3) and t is None:
            continue
        if all(eform_depth(F) <= max_depth for F in (*axioms, conj)):
            return Problem(f"rand{index}_t{k}", axioms, conj)


def _subst_e(F, x, t):
    """Replace free occurrences of variable ``x`` by the ground term ``t``."""
    def term(u):
        if isinstance(u, EVar):
            return t if u.name == x else u
        return EFun(u.symbol, tuple(term(a) for a in u.args))

    if isinstance(F, (EBot, ETop)):
        return F
    if isinstance(F, EPred):
        return EPred(F.symbol, tuple(term(a) for a in F.args))
    if isinstance(F, ENeg):
        return ENeg(_subst_e(F.body, x, t))
    if isinstance(F, (EAll, EEx)):
        if F.var == x:
            return F
        return type(F)(F.var, _subst_e(F.body, x, t))
    return type(F)(_subst_e(F.left, x, t), _subst_e(F.right, x, t))


def _rename(F, x, y):
    return _subst_e(F, x, EVar(y))


# -- Skolem candidates ---------------------------------------------------------------

@dataclass(frozen=True)
class SkolemCandidate:
    term: object
    target: object  # Neg(All F)
    record: object
    branch_fvs: frozenset
    funcs: frozenset


def random_skolem_candidate(rng: random.Random, strategy, sig: Signature = DEFAULT_SIG,
                            valid_bias: float = 0.6) -> SkolemCandidate:
    """A delta candidate that is valid for ``strategy`` roughly ``valid_bias`` of the time."""
    from .skolem import EMPTY_RECORD
    from .syntax import function_symbols, fv

    names = ("X", "Y", "Z", "W")
    body = random_form(rng, sig, rng.randint(0, 3), 1, names[:3], term_depth=1)
    target = Neg(All(body))
    branch = set(fv(target)) | {x for x in names if rng.random() < 0.4}
    funcs = set(function_symbols(target)) | {s for s in ("h", "k") if rng.random() < 0.3}
    record = EMPTY_RECORD
    for i in range(rng.randint(0, 2)):
        other = Neg(All(random_form(rng, sig, 1, 1, names[:2], term_depth=0)))
        if other not in record.assoc:
            record = strategy.add_symbol(record, f"sk{len(record.used)}", other)
    if rng.random() < 0.3 and target not in record.assoc:
        record = strategy.add_symbol(record, f"sk{len(record.used)}", target)
    t = strategy.make_term(target, record, branch, funcs, prefix="sk")
    if rng.random() > valid_bias:
        k = rng.randrange(4)
        if k == 0:
            t = Fun(rng.choice(sorted(funcs | set(record.used) | {"sk0"})), t.args)
        elif k == 1:
            t = Fun(t.symbol, tuple(rng.sample([FreeVar(x) for x in names], rng.randint(0, 3))))
        elif k == 2:
            t = Fun(t.symbol, t.args + (Fun("a", ()),))
        else:
            t = FreeVar(rng.choice(names))
    return SkolemCandidate(t, target, record, frozenset(branch), frozenset(funcs))
