"""Rule-tree certificates and the informative proof checker.

A certificate bundles a context, a closing substitution, a Skolemization
strategy and a :class:`RuleTree`.  :func:`check_proof` replays the tree over
the growing context and reports every failure as a message naming the rule,
the offending formula or term, and the branch path.  :func:`ruletree_to_sequence`
extracts the tableau expansion sequence a rule tree stands for, so accepted
certificates can be cross-checked against the calculus in :mod:`tabcheck.tableau`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence, Union

from .sexpr import show
from .skolem import EMPTY_RECORD, SkolemError, SkoRecord, get_strategy
from .syntax import All, Bot, Form, FreeVar, Fun, Neg, Or, Term, function_symbols, fv, open_var, subst
from .tableau import LEFT, RIGHT, Tableau, TableauError, expand_tableau_branch, single_node

# Message templates; bump MESSAGES_VERSION whenever wording changes.
MESSAGES_VERSION = 1
MESSAGES = {
    "no-trivial": "[{path}] leaf: no trivial contradiction in context",
    "pair-absent": "[{path}] leaf: {form} is not in context, no contradictions in Gamma@[sigma]",
    "pair-open": "[{path}] leaf: no contradictions in Gamma@[sigma]: {f} and {g} are not complementary",
    "bad-shape": "[{path}] {rule}: target {form} is not of the form {shape}",
    "not-in-context": "[{path}] {rule}: target {form} is not in context",
    "right-not-leaf": "[{path}] {rule}: unary rule must carry an empty leaf as right subtree",
    "not-sko": "[{path}] delta-neg-all: {term} is not a valid skolem term for {form}: {reason}",
    "record": "[{path}] delta-neg-all: cannot record {term} for {form}: {reason}",
}


def _msg(key, path, **kw) -> str:
    return MESSAGES[key].format(path="".join(path) or "root", **kw)


# -- rules and trees ---------------------------------------------------------------

@dataclass(frozen=True)
class AlphaNegNeg:
    F: Form
    name = "alpha-neg-neg"


@dataclass(frozen=True)
class AlphaNegOr:
    F: Form
    name = "alpha-neg-or"


@dataclass(frozen=True)
class BetaOr:
    F: Form
    name = "beta-or"


@dataclass(frozen=True)
class GammaAll:
    F: Form
    var: str
    name = "gamma-all"


@dataclass(frozen=True)
class DeltaNegAll:
    F: Form
    term: Term
    name = "delta-neg-all"


Rule = Union[AlphaNegNeg, AlphaNegOr, BetaOr, GammaAll, DeltaNegAll]
UNARY = (AlphaNegNeg, AlphaNegOr, GammaAll, DeltaNegAll)


@dataclass(frozen=True)
class Leaf:
    pair: Optional[tuple] = None

    def __post_init__(self):
        if self.pair is not None:
            object.__setattr__(self, "pair", tuple(self.pair))


@dataclass(frozen=True)
class Node:
    left: "RuleTree"
    rule: Rule
    right: "RuleTree" = field(default_factory=Leaf)


RuleTree = Union[Leaf, Node]

LEAF = Leaf()


def unary(rule: Rule, child: RuleTree) -> Node:
    return Node(child, rule, LEAF)


@dataclass(frozen=True)
class Certificate:
    context: tuple
    sigma: Mapping
    strategy: object  # a SkolemStrategy
    tree: RuleTree

    def __post_init__(self):
        object.__setattr__(self, "context", tuple(self.context))
        object.__setattr__(self, "sigma", dict(self.sigma))
        object.__setattr__(self, "strategy", get_strategy(self.strategy))

    def __eq__(self, other):
        return (isinstance(other, Certificate) and self.context == other.context
                and self.sigma == other.sigma and self.strategy.kind == other.strategy.kind
                and self.tree == other.tree)

    __hash__ = None


@dataclass
class CheckOutcome:
    status: bool
    symbs: SkoRecord = EMPTY_RECORD
    messages: list = field(default_factory=list)

    def __bool__(self):
        return self.status


# -- the checker ---------------------------------------------------------------------

def _shape(rule):
    F = rule.F
    if isinstance(rule, AlphaNegNeg):
        return isinstance(F, Neg) and isinstance(F.body, Neg), "(not (not F))"
    if isinstance(rule, AlphaNegOr):
        return isinstance(F, Neg) and isinstance(F.body, Or), "(not (or F G))"
    if isinstance(rule, BetaOr):
        return isinstance(F, Or), "(or F G)"
    if isinstance(rule, GammaAll):
        return isinstance(F, All), "(all F)"
    return isinstance(F, Neg) and isinstance(F.body, All), "(not (all F))"


def _trivially_closed(gamma) -> bool:
    seen = set(gamma)
    return any(isinstance(F, Bot) or (isinstance(F, Neg) and F.body in seen) for F in seen)


def check_proof_aux(strategy, base_funcs, gamma: Sequence[Form], sigma, record: SkoRecord,
                    R: RuleTree, path: tuple = ()) -> CheckOutcome:
    """Check ``R`` against context ``gamma``; the record is threaded left to right."""
    strategy = get_strategy(strategy)
    base_funcs = frozenset(base_funcs)
    ctx = list(gamma)
    return _check(strategy, base_funcs, ctx, sigma, record, R, tuple(path))


def _check(strategy, base_funcs, ctx: list, sigma, record, R, path) -> CheckOutcome:
    if isinstance(R, Leaf):
        if R.pair is None:
            if _trivially_closed(ctx):
                return CheckOutcome(True, record)
            return CheckOutcome(False, record, [_msg("no-trivial", path)])
        F, G = R.pair
        for X in (F, G):
            if X not in ctx:
                return CheckOutcome(False, record, [_msg("pair-absent", path, form=show(X))])
        sF, sG = subst(F, sigma), subst(G, sigma)
        if sF == Neg(sG) or sG == Neg(sF):
            return CheckOutcome(True, record)
        return CheckOutcome(False, record, [_msg("pair-open", path, f=show(sF), g=show(sG))])

    rule = R.rule
    ok, shape = _shape(rule)
    if not ok:
        return CheckOutcome(False, record, [_msg("bad-shape", path, rule=rule.name,
                                                 form=show(rule.F), shape=shape)])
    if rule.F not in ctx:
        return CheckOutcome(False, record, [_msg("not-in-context", path, rule=rule.name,
                                                 form=show(rule.F))])
    if isinstance(rule, UNARY) and R.right != LEAF:
        return CheckOutcome(False, record, [_msg("right-not-leaf", path, rule=rule.name)])

    if isinstance(rule, BetaOr):
        left = _extend(strategy, base_funcs, ctx, sigma, record, R.left, path + (LEFT,),
                       [rule.F.left])
        if not left.status:
            return left
        right = _extend(strategy, base_funcs, ctx, sigma, left.symbs, R.right, path + (RIGHT,),
                        [rule.F.right])
        return CheckOutcome(right.status, right.symbs, left.messages + right.messages)

    if isinstance(rule, AlphaNegNeg):
        new = [rule.F.body.body]
    elif isinstance(rule, AlphaNegOr):
        new = [Neg(rule.F.body.left), Neg(rule.F.body.right)]
    elif isinstance(rule, GammaAll):
        new = [open_var(rule.F.body, 0, FreeVar(rule.var))]
    else:
        t = rule.term
        reason = strategy.violation(t, rule.F, record, fv(ctx), base_funcs | record.used)
        if reason is not None:
            return CheckOutcome(False, record, [_msg("not-sko", path, term=show(t),
                                                     form=show(rule.F), reason=reason)])
        try:
            record = strategy.add_symbol(record, strategy.symbol(t), rule.F)
        except SkolemError as e:
            return CheckOutcome(False, record, [_msg("record", path, term=show(t),
                                                     form=show(rule.F), reason=str(e))])
        new = [Neg(open_var(rule.F.body.body, 0, t))]
    return _extend(strategy, base_funcs, ctx, sigma, record, R.left, path + (LEFT,), new)


def _extend(strategy, base_funcs, ctx, sigma, record, R, path, new):
    n = len(ctx)
    ctx.extend(new)
    try:
        return _check(strategy, base_funcs, ctx, sigma, record, R, path)
    finally:
        del ctx[n:]


def check_proof(cert: Certificate) -> CheckOutcome:
    """Check a certificate from an empty record and the context's function symbols."""
    return check_proof_aux(cert.strategy, function_symbols(cert.context), cert.context,
                           cert.sigma, EMPTY_RECORD, cert.tree)


def format_diagnostics(outcome: CheckOutcome) -> str:
    return "".join(m + "\n" for m in outcome.messages)


# -- rule tree -> expansion sequence -----------------------------------------------------

def ruletree_to_sequence(strategy, B: Sequence[str], T: Tableau, R: RuleTree):
    """The tableau sequence a rule tree describes when replayed on branch ``B`` of ``T``.

    Side conditions are not checked here; returns None when a rule target
    has the wrong shape or the expansion itself is impossible.
    """
    strategy = get_strategy(strategy)
    try:
        return _to_seq(strategy, tuple(B), T, R)
    except (TableauError, SkolemError):
        return None


def _to_seq(strategy, B, T, R):
    if isinstance(R, Leaf):
        return [T]
    rule = R.rule
    ok, _ = _shape(rule)
    if not ok:
        return None
    F = rule.F
    if isinstance(rule, BetaOr):
        T1 = expand_tableau_branch([F.left], [F.right], B, T)
        s1 = _to_seq(strategy, B + (LEFT,), T1, R.left)
        if s1 is None:
            return None
        s2 = _to_seq(strategy, B + (RIGHT,), s1[-1], R.right)
        if s2 is None:
            return None
        return [T] + s1[:-1] + s2
    if isinstance(rule, AlphaNegNeg):
        T1 = expand_tableau_branch([F.body.body], None, B, T)
    elif isinstance(rule, AlphaNegOr):
        T1 = expand_tableau_branch([Neg(F.body.left), Neg(F.body.right)], None, B, T)
    elif isinstance(rule, GammaAll):
        T1 = expand_tableau_branch([open_var(F.body, 0, FreeVar(rule.var))], None, B, T)
    else:
        t = rule.term
        if not isinstance(t, Fun):
            return None
        T0 = expand_tableau_branch([Neg(open_var(F.body.body, 0, t))], None, B, T)
        T1 = Tableau(T0.tree, strategy.add_symbol(T.symbols, t.symbol, F))
    s = _to_seq(strategy, B + (LEFT,), T1, R.left)
    if s is None:
        return None
    return [T] + s


def certificate_sequence(cert: Certificate):
    """Sequence extracted from the single-node tableau of the certificate's context."""
    return ruletree_to_sequence(cert.strategy, (), single_node(cert.context), cert.tree)


# -- tree utilities ------------------------------------------------------------------------

def iter_nodes(R: RuleTree, path: tuple = ()):
    """Yield ``(path, subtree)`` in pre-order; unary children follow ``L``."""
    stack = [(path, R)]
    while stack:
        p, r = stack.pop()
        yield p, r
        if isinstance(r, Node):
            if isinstance(r.rule, BetaOr):
                stack.append((p + (RIGHT,), r.right))
            stack.append((p + (LEFT,), r.left))


def replace_subtree(R: RuleTree, path: Sequence[str], new: RuleTree) -> RuleTree:
    if not path:
        return new
    if not isinstance(R, Node):
        raise ValueError("path leaves the rule tree")
    if path[0] == LEFT:
        return Node(replace_subtree(R.left, path[1:], new), R.rule, R.right)
    return Node(R.left, R.rule, replace_subtree(R.right, path[1:], new))
