"""Full first-order syntax with named binders, and its translation to the fragment.

Translation threads the list of enclosing binder names, innermost first; a
variable found in that list becomes the matching De Bruijn index, anything
else stays a free variable.  Connectives outside the fragment are encoded::

    top       ~> Neg Bot
    a & b     ~> Neg (Or (Neg a) (Neg b))
    a => b    ~> Or (Neg a) b
    a <=> b   ~> (a => b) & (b => a)
    ?x. a     ~> Neg (All (Neg a))
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .syntax import All, BOT, BoundVar, Form, FreeVar, Fun, Neg, Or, Pred, Term


@dataclass(frozen=True, slots=True)
class EVar:
    name: str


@dataclass(frozen=True, slots=True)
class EFun:
    symbol: str
    args: tuple = ()

    def __post_init__(self):
        if not isinstance(self.args, tuple):
            object.__setattr__(self, "args", tuple(self.args))


ETerm = Union[EVar, EFun]


@dataclass(frozen=True, slots=True)
class EBot:
    pass


@dataclass(frozen=True, slots=True)
class ETop:
    pass


@dataclass(frozen=True, slots=True)
class EPred:
    symbol: str
    args: tuple = ()

    def __post_init__(self):
        if not isinstance(self.args, tuple):
            object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True, slots=True)
class ENeg:
    body: "EForm"


@dataclass(frozen=True, slots=True)
class EAnd:
    left: "EForm"
    right: "EForm"


@dataclass(frozen=True, slots=True)
class EOr:
    left: "EForm"
    right: "EForm"


@dataclass(frozen=True, slots=True)
class EImp:
    left: "EForm"
    right: "EForm"


@dataclass(frozen=True, slots=True)
class EIff:
    left: "EForm"
    right: "EForm"


@dataclass(frozen=True, slots=True)
class EAll:
    var: str
    body: "EForm"


@dataclass(frozen=True, slots=True)
class EEx:
    var: str
    body: "EForm"


EForm = Union[EBot, ETop, EPred, ENeg, EAnd, EOr, EImp, EIff, EAll, EEx]
BINARY = (EAnd, EOr, EImp, EIff)


def translate_eterm(bvs: Sequence[str], t: ETerm) -> Term:
    if isinstance(t, EVar):
        try:
            return BoundVar(list(bvs).index(t.name))
        except ValueError:
            return FreeVar(t.name)
    return Fun(t.symbol, tuple(translate_eterm(bvs, a) for a in t.args))


def _and(a: Form, b: Form) -> Form:
    return Neg(Or(Neg(a), Neg(b)))


def translate_eform_aux(bvs: Sequence[str], F: EForm) -> Form:
    if isinstance(F, EBot):
        return BOT
    if isinstance(F, ETop):
        return Neg(BOT)
    if isinstance(F, EPred):
        return Pred(F.symbol, tuple(translate_eterm(bvs, a) for a in F.args))
    if isinstance(F, ENeg):
        return Neg(translate_eform_aux(bvs, F.body))
    if isinstance(F, EOr):
        return Or(translate_eform_aux(bvs, F.left), translate_eform_aux(bvs, F.right))
    if isinstance(F, EAnd):
        return _and(translate_eform_aux(bvs, F.left), translate_eform_aux(bvs, F.right))
    if isinstance(F, EImp):
        return Or(Neg(translate_eform_aux(bvs, F.left)), translate_eform_aux(bvs, F.right))
    if isinstance(F, EIff):
        return translate_eform_aux(bvs, EAnd(EImp(F.left, F.right), EImp(F.right, F.left)))
    if isinstance(F, EAll):
        return All(translate_eform_aux([F.var, *bvs], F.body))
    if isinstance(F, EEx):
        return Neg(All(Neg(translate_eform_aux([F.var, *bvs], F.body))))
    raise TypeError(f"not an extended formula: {F!r}")


def translate_eform(F: EForm) -> Form:
    return translate_eform_aux([], F)


# -- semantics --------------------------------------------------------------------

def interpret_eterm(M, env, t: ETerm) -> int:
    if isinstance(t, EVar):
        return env[t.name]
    return M.apply(t.symbol, [interpret_eterm(M, env, a) for a in t.args])


def interpret_eform(M, env, F: EForm) -> bool:
    """Tarskian truth with a named, total variable environment (a ``FreeEnv``)."""
    from .semantics import FreeEnv

    if not isinstance(env, FreeEnv):
        env = FreeEnv(env)
    if isinstance(F, EBot):
        return False
    if isinstance(F, ETop):
        return True
    if isinstance(F, EPred):
        return M.holds(F.symbol, [interpret_eterm(M, env, a) for a in F.args])
    if isinstance(F, ENeg):
        return not interpret_eform(M, env, F.body)
    if isinstance(F, EAnd):
        return interpret_eform(M, env, F.left) and interpret_eform(M, env, F.right)
    if isinstance(F, EOr):
        return interpret_eform(M, env, F.left) or interpret_eform(M, env, F.right)
    if isinstance(F, EImp):
        return (not interpret_eform(M, env, F.left)) or interpret_eform(M, env, F.right)
    if isinstance(F, EIff):
        return interpret_eform(M, env, F.left) == interpret_eform(M, env, F.right)
    if isinstance(F, EAll):
        return all(interpret_eform(M, env.updated(F.var, d), F.body) for d in M.domain)
    if isinstance(F, EEx):
        return any(interpret_eform(M, env.updated(F.var, d), F.body) for d in M.domain)
    raise TypeError(f"not an extended formula: {F!r}")


class LengthMismatch(ValueError):
    pass


def extended_env(bvs: Sequence[str], rho: Sequence[int], sigma):
    """Named environment: ``bvs[n]`` maps to ``rho[n]`` (first occurrence wins), the rest to ``sigma``."""
    from .semantics import FreeEnv

    if len(bvs) != len(rho):
        raise LengthMismatch(f"{len(bvs)} binder names but {len(rho)} bound values")
    base = sigma if isinstance(sigma, FreeEnv) else FreeEnv(sigma)
    m = base.explicit()
    for i in reversed(range(len(bvs))):
        m[bvs[i]] = rho[i]
    return FreeEnv(m, base.default)


# -- misc ----------------------------------------------------------------------------

def eform_depth(F: EForm) -> int:
    if isinstance(F, (ENeg, EAll, EEx)):
        return 1 + eform_depth(F.body)
    if isinstance(F, BINARY):
        return 1 + max(eform_depth(F.left), eform_depth(F.right))
    return 0


def eform_symbols(F: EForm):
    """``(functions, predicates)`` as ``{symbol: arity}`` maps (last arity seen wins)."""
    funs, preds = {}, {}

    def term(t):
        if isinstance(t, EFun):
            funs[t.symbol] = len(t.args)
            for a in t.args:
                term(a)

    stack = [F]
    while stack:
        G = stack.pop()
        if isinstance(G, EPred):
            preds[G.symbol] = len(G.args)
            for a in G.args:
                term(a)
        elif isinstance(G, (ENeg, EAll, EEx)):
            stack.append(G.body)
        elif isinstance(G, BINARY):
            stack.extend((G.left, G.right))
    return funs, preds


def eform_names(F: EForm) -> set:
    """Every variable, function and predicate name occurring in ``F``."""
    out = set()

    def term(t):
        if isinstance(t, EVar):
            out.add(t.name)
        else:
            out.add(t.symbol)
            for a in t.args:
                term(a)

    stack = [F]
    while stack:
        G = stack.pop()
        if isinstance(G, EPred):
            out.add(G.symbol)
            for a in G.args:
                term(a)
        elif isinstance(G, (EAll, EEx)):
            out.add(G.var)
            stack.append(G.body)
        elif isinstance(G, ENeg):
            stack.append(G.body)
        elif isinstance(G, BINARY):
            stack.extend((G.left, G.right))
    return out
