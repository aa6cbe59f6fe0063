"""Hypothesis strategies for the locally nameless syntax and finite models."""

from functools import lru_cache

from hypothesis import strategies as st

from tabcheck.semantics import FiniteModel, FreeEnv
from tabcheck.syntax import BOT, All, BoundVar, FreeVar, Fun, Neg, Or, Pred

FREE = ("X", "Y", "Z")
FUNS = {"a": 0, "b": 0, "f": 1, "g": 2}
PREDS = {"P": 1, "Q": 0, "R": 2}


@lru_cache(maxsize=None)
def terms(nbound=0, depth=2, free=FREE):
    leaves = [st.builds(FreeVar, st.sampled_from(free)) if free else st.nothing(),
              st.sampled_from([Fun("a"), Fun("b")])]
    if nbound:
        leaves.append(st.builds(BoundVar, st.integers(0, nbound - 1)))
    leaf = st.one_of(leaves)
    if depth == 0:
        return leaf
    sub = terms(nbound, depth - 1, free)
    return st.one_of(
        leaf,
        st.builds(lambda x: Fun("f", (x,)), sub),
        st.builds(lambda x, y: Fun("g", (x, y)), sub, sub),
    )


def closed_terms(depth=2):
    return terms(0, depth, ())


@lru_cache(maxsize=None)
def forms(nbound=0, depth=3, free=FREE):
    t = terms(nbound, 1, free)
    atom = st.one_of(
        st.just(BOT),
        st.just(Pred("Q")),
        st.builds(lambda x: Pred("P", (x,)), t),
        st.builds(lambda x, y: Pred("R", (x, y)), t, t),
    )
    if depth == 0:
        return atom
    sub = forms(nbound, depth - 1, free)
    return st.one_of(
        atom,
        st.builds(Neg, sub),
        st.builds(Or, sub, sub),
        st.builds(All, forms(nbound + 1, depth - 1, free)),
    )


@st.composite
def models(draw, max_size=3, funs=FUNS, preds=PREDS):
    n = draw(st.integers(1, max_size))
    ftab = {(f, k): tuple(draw(st.lists(st.integers(0, n - 1), min_size=n ** k, max_size=n ** k)))
            for f, k in funs.items()}
    ptab = {(p, k): tuple(draw(st.lists(st.booleans(), min_size=n ** k, max_size=n ** k)))
            for p, k in preds.items()}
    return FiniteModel(n, ftab, ptab)


def envs(n, names=FREE):
    return st.fixed_dictionaries({x: st.integers(0, n - 1) for x in names}).map(FreeEnv)


def substitutions(names=FREE, depth=2):
    return st.dictionaries(st.sampled_from(names), terms(0, depth), max_size=len(names))
