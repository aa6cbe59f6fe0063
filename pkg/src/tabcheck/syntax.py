"""Locally nameless terms and formulas of the minimal first-order fragment.

Bound variables are De Bruijn indices (``BoundVar``), free variables are
named (``FreeVar``).  The only connectives are bottom, negation, disjunction
and universal quantification; everything else is encoded on top of them
(see :mod:`tabcheck.extended`).

All values are immutable; every operation here is pure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union


@dataclass(frozen=True, slots=True)
class BoundVar:
    index: int

    def __post_init__(self):
        if self.index < 0:
            raise ValueError(f"negative De Bruijn index {self.index}")


@dataclass(frozen=True, slots=True)
class FreeVar:
    name: str


# Compound nodes cache their hash: contexts are hashed constantly by the
# checker and the prover, and recomputing it walks the whole tree.

def _hashed(obj, *parts):
    object.__setattr__(obj, "_hash", hash((type(obj).__name__, *parts)))


@dataclass(frozen=True, slots=True)
class Fun:
    symbol: str
    args: tuple = ()
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.args, tuple):
            object.__setattr__(self, "args", tuple(self.args))
        _hashed(self, self.symbol, self.args)

    def __hash__(self):
        return self._hash


Term = Union[BoundVar, FreeVar, Fun]


@dataclass(frozen=True, slots=True)
class Bot:
    pass


@dataclass(frozen=True, slots=True)
class Pred:
    symbol: str
    args: tuple = ()
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.args, tuple):
            object.__setattr__(self, "args", tuple(self.args))
        _hashed(self, self.symbol, self.args)

    def __hash__(self):
        return self._hash


@dataclass(frozen=True, slots=True)
class Neg:
    body: "Form"
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        _hashed(self, self.body)

    def __hash__(self):
        return self._hash


@dataclass(frozen=True, slots=True)
class Or:
    left: "Form"
    right: "Form"
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        _hashed(self, self.left, self.right)

    def __hash__(self):
        return self._hash


@dataclass(frozen=True, slots=True)
class All:
    body: "Form"
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        _hashed(self, self.body)

    def __hash__(self):
        return self._hash


Form = Union[Bot, Pred, Neg, Or, All]

BOT = Bot()

#: A substitution maps free-variable names to locally closed terms.
Substitution = Mapping[str, Term]


def const(name: str) -> Fun:
    return Fun(name, ())


def is_term(x) -> bool:
    return isinstance(x, (BoundVar, FreeVar, Fun))


def is_form(x) -> bool:
    return isinstance(x, (Bot, Pred, Neg, Or, All))


# -- variable opening -------------------------------------------------------

def _open_term(t: Term, k: int, u: Term) -> Term:
    if isinstance(t, BoundVar):
        return u if t.index == k else t
    if isinstance(t, Fun):
        if not t.args:
            return t
        return Fun(t.symbol, tuple(_open_term(a, k, u) for a in t.args))
    return t


def _open_form(f: Form, k: int, u: Term) -> Form:
    if isinstance(f, Pred):
        if not f.args:
            return f
        return Pred(f.symbol, tuple(_open_term(a, k, u) for a in f.args))
    if isinstance(f, Neg):
        return Neg(_open_form(f.body, k, u))
    if isinstance(f, Or):
        return Or(_open_form(f.left, k, u), _open_form(f.right, k, u))
    if isinstance(f, All):
        return All(_open_form(f.body, k + 1, u))
    return f


def open_var(x, n: int, u: Term):
    """Replace bound index ``n`` (shifted under binders) by ``u``.

    ``u`` must be locally closed, so no index adjustment of ``u`` is needed.
    """
    if is_term(x):
        return _open_term(x, n, u)
    return _open_form(x, n, u)


# -- free / bound variables -------------------------------------------------

def _fv_term(t: Term, acc: set) -> None:
    if isinstance(t, FreeVar):
        acc.add(t.name)
    elif isinstance(t, Fun):
        for a in t.args:
            _fv_term(a, acc)


def _fv_form(f: Form, acc: set) -> None:
    while True:
        if isinstance(f, Pred):
            for a in f.args:
                _fv_term(a, acc)
            return
        if isinstance(f, (Neg, All)):
            f = f.body
        elif isinstance(f, Or):
            _fv_form(f.left, acc)
            f = f.right
        else:
            return


def fv(x) -> frozenset:
    """Names of free variables occurring in a term, formula or list of either."""
    acc: set = set()
    if is_term(x):
        _fv_term(x, acc)
    elif is_form(x):
        _fv_form(x, acc)
    else:
        for y in x:
            if is_term(y):
                _fv_term(y, acc)
            else:
                _fv_form(y, acc)
    return frozenset(acc)


def _bv_term(t: Term, depth: int, acc: set) -> None:
    if isinstance(t, BoundVar):
        if t.index >= depth:
            acc.add(t.index - depth)
    elif isinstance(t, Fun):
        for a in t.args:
            _bv_term(a, depth, acc)


def _bv_form(f: Form, depth: int, acc: set) -> None:
    if isinstance(f, Pred):
        for a in f.args:
            _bv_term(a, depth, acc)
    elif isinstance(f, Neg):
        _bv_form(f.body, depth, acc)
    elif isinstance(f, Or):
        _bv_form(f.left, depth, acc)
        _bv_form(f.right, depth, acc)
    elif isinstance(f, All):
        _bv_form(f.body, depth + 1, acc)


def bv(x) -> frozenset:
    """Dangling bound indices, adjusted to the outermost position."""
    acc: set = set()
    if is_term(x):
        _bv_term(x, 0, acc)
    else:
        _bv_form(x, 0, acc)
    return frozenset(acc)


def is_locally_closed(x) -> bool:
    return not bv(x)


def is_closed(x) -> bool:
    return not fv(x)


# -- substitution -----------------------------------------------------------

def _subst_term(t: Term, sigma: Substitution) -> Term:
    if isinstance(t, FreeVar):
        return sigma.get(t.name, t)
    if isinstance(t, Fun) and t.args:
        return Fun(t.symbol, tuple(_subst_term(a, sigma) for a in t.args))
    return t


def _subst_form(f: Form, sigma: Substitution) -> Form:
    if isinstance(f, Pred):
        if not f.args:
            return f
        return Pred(f.symbol, tuple(_subst_term(a, sigma) for a in f.args))
    if isinstance(f, Neg):
        return Neg(_subst_form(f.body, sigma))
    if isinstance(f, Or):
        return Or(_subst_form(f.left, sigma), _subst_form(f.right, sigma))
    if isinstance(f, All):
        return All(_subst_form(f.body, sigma))
    return f


def subst(x, sigma: Substitution):
    """Simultaneously replace free variables in ``x`` per ``sigma``."""
    if not sigma:
        return x
    if is_term(x):
        return _subst_term(x, sigma)
    return _subst_form(x, sigma)


def check_substitution(sigma: Substitution) -> None:
    for name, t in sigma.items():
        if not is_term(t):
            raise TypeError(f"substitution range must hold terms, got {t!r} for {name}")
        if not is_locally_closed(t):
            raise ValueError(f"substitution maps {name} to a term with dangling indices")


# -- symbols ----------------------------------------------------------------

def _funcs_term(t: Term, acc: set) -> None:
    if isinstance(t, Fun):
        acc.add(t.symbol)
        for a in t.args:
            _funcs_term(a, acc)


def _funcs_form(f: Form, acc: set) -> None:
    while True:
        if isinstance(f, Pred):
            for a in f.args:
                _funcs_term(a, acc)
            return
        if isinstance(f, (Neg, All)):
            f = f.body
        elif isinstance(f, Or):
            _funcs_form(f.left, acc)
            f = f.right
        else:
            return


def function_symbols(x) -> frozenset:
    """All function symbols of a term, a formula, or an iterable of them."""
    acc: set = set()
    items: Iterable = (x,) if (is_term(x) or is_form(x)) else x
    for y in items:
        if is_term(y):
            _funcs_term(y, acc)
        else:
            _funcs_form(y, acc)
    return frozenset(acc)


def _sig_term(t: Term, funs: dict) -> None:
    if isinstance(t, Fun):
        _note_arity(funs, t.symbol, len(t.args), "function")
        for a in t.args:
            _sig_term(a, funs)


def _note_arity(table: dict, symbol: str, arity: int, kind: str) -> None:
    seen = table.setdefault(symbol, arity)
    if seen != arity:
        raise InconsistentArity(symbol, seen, arity, kind)


class InconsistentArity(ValueError):
    def __init__(self, symbol, first, second, kind="symbol"):
        super().__init__(f"{kind} {symbol} used with arities {first} and {second}")
        self.symbol = symbol
        self.arities = (first, second)


def signature(x) -> tuple[dict, dict]:
    """Return ``(functions, predicates)`` as ``{symbol: arity}`` maps.

    Raises :class:`InconsistentArity` when a symbol is used at two arities.
    """
    funs: dict = {}
    preds: dict = {}
    stack = list((x,) if is_form(x) else x)
    while stack:
        f = stack.pop()
        if isinstance(f, Pred):
            _note_arity(preds, f.symbol, len(f.args), "predicate")
            for a in f.args:
                _sig_term(a, funs)
        elif isinstance(f, (Neg, All)):
            stack.append(f.body)
        elif isinstance(f, Or):
            stack.append(f.right)
            stack.append(f.left)
    return funs, preds


def term_size(t: Term) -> int:
    if isinstance(t, Fun):
        return 1 + sum(term_size(a) for a in t.args)
    return 1


def form_depth(f: Form) -> int:
    if isinstance(f, (Neg, All)):
        return 1 + form_depth(f.body)
    if isinstance(f, Or):
        return 1 + max(form_depth(f.left), form_depth(f.right))
    return 0
