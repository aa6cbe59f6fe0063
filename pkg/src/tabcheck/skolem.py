"""Pluggable delta-rule validity: outer, inner and pre-inner Skolemization.

A strategy decides whether a term is an acceptable Skolem term for a
negated universal ``Neg(All F)`` given the free variables of the branch, the
function symbols already in use, and a :class:`SkoRecord` of symbols that
earlier delta steps introduced.  Strategies are stateless; records are
immutable and threaded explicitly.

New strategies subclass :class:`SkolemStrategy` and override
:meth:`~SkolemStrategy.required_args` and, if they reuse symbols,
:meth:`~SkolemStrategy.recorded_symbol` / :meth:`~SkolemStrategy.add_symbol`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Sequence

from .syntax import All, Form, FreeVar, Fun, Neg, Term, function_symbols, fv, open_var


class SkolemError(Exception):
    pass


class NotSkolemTerm(SkolemError):
    pass


class ConflictingAssoc(SkolemError):
    pass


class RequirementViolated(SkolemError):
    pass


class SkolemKind(Enum):
    OUTER = "outer"
    INNER = "inner"
    PREINNER = "preinner"


@dataclass(frozen=True)
class SkoRecord:
    used: frozenset = frozenset()
    assoc: Mapping = field(default_factory=dict)  # Neg(All F) -> symbol

    def __hash__(self):
        return hash((self.used, frozenset(self.assoc.items())))


EMPTY_RECORD = SkoRecord()


def is_delta_target(F) -> bool:
    return isinstance(F, Neg) and isinstance(F.body, All)


class SkolemStrategy:
    kind: SkolemKind

    @property
    def name(self) -> str:
        return self.kind.value

    def __repr__(self):
        return f"<{type(self).__name__}>"

    # -- what a Skolem term must look like -------------------------------------

    def required_args(self, target: Form, branch_fvs: Iterable[str]) -> list:
        """Names of the variables the Skolem term must be applied to, in order."""
        raise NotImplementedError

    def recorded_symbol(self, target: Form, record: SkoRecord):
        """Symbol that must be reused for ``target``, or None if a fresh one is needed."""
        return None

    def violation(self, t: Term, target: Form, record: SkoRecord,
                  branch_fvs: Iterable[str], funcs: Iterable[str]):
        """Reason ``t`` is not a valid Skolem term, or None when it is."""
        if not is_delta_target(target):
            return "target is not a negated universal"
        if not isinstance(t, Fun):
            return "skolem term is not a function application"
        if not all(isinstance(a, FreeVar) for a in t.args):
            return "skolem arguments must be free variables"
        expected = self.required_args(target, branch_fvs)
        if [a.name for a in t.args] != expected:
            return f"skolem arguments must be ({' '.join(expected)})"
        fixed = self.recorded_symbol(target, record)
        if fixed is not None:
            if t.symbol != fixed:
                return f"skolem symbol must be {fixed}, recorded for this formula"
            return None
        if t.symbol in record.used or t.symbol in set(funcs):
            return "skolem symbol not fresh"
        return None

    def is_sko(self, t: Term, target: Form, record: SkoRecord,
               branch_fvs: Iterable[str], funcs: Iterable[str]) -> bool:
        return self.violation(t, target, record, branch_fvs, funcs) is None

    @staticmethod
    def symbol(t: Term) -> str:
        if not isinstance(t, Fun):
            raise NotSkolemTerm(f"not a function term: {t!r}")
        return t.symbol

    @staticmethod
    def args(t: Term) -> list:
        if not isinstance(t, Fun):
            raise NotSkolemTerm(f"not a function term: {t!r}")
        return list(t.args)

    def add_symbol(self, record: SkoRecord, f: str, target: Form) -> SkoRecord:
        return SkoRecord(record.used | {f}, record.assoc)

    def make_term(self, target: Form, record: SkoRecord, branch_fvs: Iterable[str],
                  funcs: Iterable[str], prefix: str = "_sk") -> Fun:
        """Build a valid Skolem term, inventing a fresh ``prefix<i>`` symbol if needed."""
        args = tuple(FreeVar(x) for x in self.required_args(target, branch_fvs))
        f = self.recorded_symbol(target, record)
        if f is None:
            taken = set(funcs) | record.used
            i = len(record.used)
            while f"{prefix}{i}" in taken:
                i += 1
            f = f"{prefix}{i}"
        return Fun(f, args)


class OuterSkolemization(SkolemStrategy):
    """Fresh symbol over every free variable of the branch."""

    kind = SkolemKind.OUTER

    def required_args(self, target, branch_fvs):
        return sorted(set(branch_fvs))


class InnerSkolemization(SkolemStrategy):
    """Fresh symbol over the free variables of the Skolemized formula only."""

    kind = SkolemKind.INNER

    def required_args(self, target, branch_fvs):
        return sorted(fv(target))


class PreInnerSkolemization(InnerSkolemization):
    """Inner Skolemization where a formula always gets the same symbol."""

    kind = SkolemKind.PREINNER

    def recorded_symbol(self, target, record):
        return record.assoc.get(target)

    def add_symbol(self, record, f, target):
        old = record.assoc.get(target)
        if old is not None and old != f:
            raise ConflictingAssoc(f"formula already associated with {old}, not {f}")
        assoc = record.assoc
        if old is None:
            assoc = dict(assoc)
            assoc[target] = f
        return SkoRecord(record.used | {f}, assoc)


OUTER = OuterSkolemization()
INNER = InnerSkolemization()
PREINNER = PreInnerSkolemization()

STRATEGIES = {s.name: s for s in (OUTER, INNER, PREINNER)}


def get_strategy(name) -> SkolemStrategy:
    if isinstance(name, SkolemStrategy):
        return name
    if isinstance(name, SkolemKind):
        name = name.value
    try:
        return STRATEGIES[str(name).lower().replace("-", "").replace("_", "")]
    except KeyError:
        raise ValueError(f"unknown Skolemization strategy {name!r}") from None


# -- semantic requirement: a witnessing interpretation exists -----------------

def witness_table(M, t: Fun, F: Form, mu) -> list:
    """Interpretation for ``t``'s symbol sending each argument tuple to the
    first element falsifying ``F`` (0 when none does)."""
    from .semantics import interpret_form

    names = [a.name for a in t.args]
    table = []
    for values in itertools.product(M.domain, repeat=len(names)):
        env = mu
        for x, v in zip(names, values):
            env = env.updated(x, v)
        pick = 0
        for d in M.domain:
            if not interpret_form(M, (d,), env, F):
                pick = d
                break
        table.append(pick)
    return table


def check_requirement4(strategy, M, t: Term, F: Form, mu, *, record: SkoRecord = EMPTY_RECORD,
                       branch_fvs=None, funcs=None, tests: Sequence[Form] = ()):
    """Build the model that interprets the Skolem term as a witness and verify it.

    ``F`` is the body of the negated universal ``Neg(All F)``.  Checks that
    every formula of ``tests`` free of the Skolem symbol and true in ``M``
    under ``mu`` stays true, and that ``Neg(All F)`` true in ``M`` makes
    ``Neg(open(F, 0, t))`` true in the new model.  Returns the new model.
    """
    from .semantics import FreeEnv, interpret_form

    strategy = get_strategy(strategy)
    mu = mu if isinstance(mu, FreeEnv) else FreeEnv(mu)
    target = Neg(All(F))
    if branch_fvs is None:
        branch_fvs = fv(target)
    if funcs is None:
        funcs = function_symbols([target, *tests])
    reason = strategy.violation(t, target, record, branch_fvs, funcs)
    if reason is not None:
        raise NotSkolemTerm(reason)
    f = strategy.symbol(t)
    M2 = M.with_fun(f, len(t.args), witness_table(M, t, F, mu))
    for G in tests:
        if f in function_symbols(G):
            continue
        if interpret_form(M, (), mu, G) and not interpret_form(M2, (), mu, G):
            raise RequirementViolated(f"formula {G!r} lost its truth after reinterpreting {f}")
    if interpret_form(M, (), mu, target) and not interpret_form(M2, (), mu, Neg(open_var(F, 0, t))):
        raise RequirementViolated(f"skolem term {t!r} does not witness {target!r}")
    return M2
