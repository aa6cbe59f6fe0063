"""Finite-model semantics of the minimal fragment and bounded validity oracles.

Models have domain ``{0, ..., n-1}``.  Function and predicate tables are
flat tuples in row-major order: the entry for arguments ``(d1, ..., dk)``
sits at index ``d1*n^(k-1) + ... + dk``.

The oracles enumerate every model up to a domain bound, so they can only
ever *refute* validity; ``Valid`` means "no countermodel up to the bound".
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from . import kernel
from .syntax import All, BOT, Bot, BoundVar, Form, FreeVar, Neg, Or, Pred, Term, bv, fv, signature

DEFAULT_BUDGET = 20_000_000


class SemanticsError(Exception):
    pass


class MissingSymbol(SemanticsError):
    def __init__(self, symbol, arity):
        super().__init__(f"no interpretation for {symbol}/{arity}")
        self.symbol = symbol
        self.arity = arity


class DanglingIndex(SemanticsError):
    def __init__(self, index):
        super().__init__(f"bound index {index} has no binder")
        self.index = index


class BudgetExceeded(SemanticsError):
    pass


def _index(n: int, args: Sequence[int]) -> int:
    idx = 0
    for d in args:
        idx = idx * n + d
    return idx


@dataclass(frozen=True)
class FiniteModel:
    domain_size: int
    funs: Mapping = field(default_factory=dict)   # (symbol, arity) -> tuple of elements
    preds: Mapping = field(default_factory=dict)  # (symbol, arity) -> tuple of bools

    def __post_init__(self):
        if self.domain_size < 1:
            raise ValueError("domain must be non-empty")
        n = self.domain_size
        for (sym, k), table in self.funs.items():
            if len(table) != n ** k:
                raise ValueError(f"table for {sym}/{k} has {len(table)} entries, expected {n ** k}")
            if any(not 0 <= v < n for v in table):
                raise ValueError(f"table for {sym}/{k} leaves the domain")
        for (sym, k), table in self.preds.items():
            if len(table) != n ** k:
                raise ValueError(f"table for {sym}/{k} has {len(table)} entries, expected {n ** k}")

    @property
    def domain(self) -> range:
        return range(self.domain_size)

    @classmethod
    def build(cls, n: int, funs: Mapping | None = None, preds: Mapping | None = None):
        """Build from callables: ``funs={("f", 1): lambda x: (x + 1) % n}``."""
        ft = {}
        for (sym, k), fn in (funs or {}).items():
            ft[(sym, k)] = tuple(int(fn(*args)) for args in itertools.product(range(n), repeat=k))
        pt = {}
        for (sym, k), fn in (preds or {}).items():
            pt[(sym, k)] = tuple(bool(fn(*args)) for args in itertools.product(range(n), repeat=k))
        return cls(n, ft, pt)

    def apply(self, symbol: str, args: Sequence[int]) -> int:
        try:
            table = self.funs[(symbol, len(args))]
        except KeyError:
            raise MissingSymbol(symbol, len(args)) from None
        return table[_index(self.domain_size, args)]

    def holds(self, symbol: str, args: Sequence[int]) -> bool:
        try:
            table = self.preds[(symbol, len(args))]
        except KeyError:
            raise MissingSymbol(symbol, len(args)) from None
        return bool(table[_index(self.domain_size, args)])

    def with_fun(self, symbol: str, arity: int, table) -> "FiniteModel":
        funs = dict(self.funs)
        funs[(symbol, arity)] = tuple(table)
        return FiniteModel(self.domain_size, funs, self.preds)


class FreeEnv(Mapping):
    """Total map from variable names to domain elements (``default`` when unmapped)."""

    __slots__ = ("_m", "default")

    def __init__(self, mapping: Mapping | None = None, default: int = 0):
        self._m = dict(mapping or {})
        self.default = default

    def __getitem__(self, name):
        return self._m.get(name, self.default)

    def __iter__(self):
        return iter(self._m)

    def __len__(self):
        return len(self._m)

    def __contains__(self, name):
        return True

    def __eq__(self, other):
        return isinstance(other, FreeEnv) and self._m == other._m and self.default == other.default

    def __hash__(self):
        return hash((frozenset(self._m.items()), self.default))

    def __repr__(self):
        return f"FreeEnv({self._m!r}, default={self.default})"

    def updated(self, name: str, value: int) -> "FreeEnv":
        m = dict(self._m)
        m[name] = value
        return FreeEnv(m, self.default)

    def explicit(self) -> dict:
        return dict(self._m)


def _as_env(sigma) -> FreeEnv:
    return sigma if isinstance(sigma, FreeEnv) else FreeEnv(sigma)


def interpret_term(M: FiniteModel, rho: Sequence[int], sigma, t: Term) -> int:
    """``rho[0]`` is the innermost binder."""
    if isinstance(t, BoundVar):
        if t.index >= len(rho):
            raise DanglingIndex(t.index)
        return rho[t.index]
    if isinstance(t, FreeVar):
        return sigma[t.name]
    return M.apply(t.symbol, [interpret_term(M, rho, sigma, a) for a in t.args])


def interpret_form(M: FiniteModel, rho: Sequence[int], sigma, F: Form) -> bool:
    if isinstance(F, Bot):
        return False
    if isinstance(F, Pred):
        return M.holds(F.symbol, [interpret_term(M, rho, sigma, a) for a in F.args])
    if isinstance(F, Neg):
        return not interpret_form(M, rho, sigma, F.body)
    if isinstance(F, Or):
        return interpret_form(M, rho, sigma, F.left) or interpret_form(M, rho, sigma, F.right)
    if isinstance(F, All):
        rho = tuple(rho)
        return all(interpret_form(M, (d,) + rho, sigma, F.body) for d in M.domain)
    raise TypeError(f"not a formula: {F!r}")


def interpret_context(M: FiniteModel, sigma, gamma: Iterable[Form]) -> bool:
    return all(interpret_form(M, (), sigma, g) for g in gamma)


# -- derived connectives used to phrase entailment ---------------------------

def conj(forms: Sequence[Form]) -> Form:
    """Right-nested conjunction ``not (not a or not b)``; the empty one is ``not bot``."""
    if not forms:
        return Neg(BOT)
    acc = forms[-1]
    for g in reversed(forms[:-1]):
        acc = Neg(Or(Neg(g), Neg(acc)))
    return acc


def entailment_formula(gamma: Sequence[Form], F: Form) -> Form:
    return Or(Neg(conj(list(gamma))), F)


# -- bounded validity ----------------------------------------------------------

@dataclass(frozen=True)
class Valid:
    max_size: int
    models_checked: int = 0

    is_valid = True

    def describe(self) -> str:
        return f"valid-upto {self.max_size}"


@dataclass(frozen=True)
class Countermodel:
    model: FiniteModel
    env: FreeEnv

    is_valid = False

    def describe(self) -> str:
        return format_model(self.model, self.env)


def _decode(prog: kernel.Program, vals) -> tuple[FiniteModel, FreeEnv]:
    funs, preds, env = {}, {}, {}
    for cell in prog.cells:
        chunk = vals[cell.offset:cell.offset + cell.size]
        if cell.kind == "fun":
            funs[(cell.symbol, cell.arity)] = tuple(chunk)
        elif cell.kind == "pred":
            preds[(cell.symbol, cell.arity)] = tuple(bool(v) for v in chunk)
        else:
            env[cell.symbol] = chunk[0]
    return FiniteModel(prog.n, funs, preds), FreeEnv(env)


def find_countermodel(F: Form, size: int, budget: int = DEFAULT_BUDGET, backend=None):
    """Search one domain size. Returns ``(Countermodel | None, assignments_checked)``."""
    if bv(F):
        raise DanglingIndex(min(bv(F)))
    funs, preds = signature(F)
    prog = kernel.compile_form(F, funs, preds, fv(F), size)
    status, count, vals = kernel.search(prog, budget, backend)
    if status == 2:
        raise BudgetExceeded(f"model enumeration exceeded {budget} assignments at size {size}")
    if status == 1:
        model, env = _decode(prog, vals)
        if interpret_form(model, (), env, F):  # kernel/reference disagreement
            raise AssertionError("kernel countermodel does not falsify the formula")
        return Countermodel(model, env), count
    return None, count


def is_valid_upto(F: Form, max_size: int, budget: int = DEFAULT_BUDGET, backend=None):
    """Enumerate all models of size ``1..max_size`` and environments over ``fv(F)``.

    ``budget`` bounds the total number of (model, environment) assignments.
    """
    if max_size < 1:
        raise ValueError("max_size must be at least 1")
    used = 0
    for n in range(1, max_size + 1):
        found, count = find_countermodel(F, n, budget - used, backend)
        used += count
        if found is not None:
            return found
    return Valid(max_size, used)


def valid_under_upto(gamma: Sequence[Form], F: Form, max_size: int,
                     budget: int = DEFAULT_BUDGET, backend=None):
    return is_valid_upto(entailment_formula(gamma, F), max_size, budget, backend)


# -- text layout ----------------------------------------------------------------

def format_model(M: FiniteModel, env: Mapping | None = None) -> str:
    """Countermodel layout::

        countermodel size 2
        fun f/1: (0)->1 (1)->0
        pred p/1: (0)->true (1)->false
        free X = 0
    """
    n = M.domain_size
    lines = [f"countermodel size {n}"]

    def rows(k, table, show):
        return " ".join(
            f"({','.join(map(str, args))})->{show(table[i])}"
            for i, args in enumerate(itertools.product(range(n), repeat=k))
        )

    for (sym, k) in sorted(M.funs):
        lines.append(f"fun {sym}/{k}: {rows(k, M.funs[(sym, k)], str)}")
    for (sym, k) in sorted(M.preds):
        lines.append(f"pred {sym}/{k}: {rows(k, M.preds[(sym, k)], lambda v: 'true' if v else 'false')}")
    explicit = env.explicit() if isinstance(env, FreeEnv) else dict(env or {})
    for name in sorted(explicit):
        lines.append(f"free {name} = {explicit[name]}")
    return "\n".join(lines)
