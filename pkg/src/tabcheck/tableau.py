"""Tableau trees, branches, the expansion relation, closure and expansion sequences.

A tableau tree is a binary tree whose nodes carry lists of formulas; a
unary expansion always attaches its child on the left.  A branch is a
sequence of ``"L"``/``"R"`` steps from the root.  Expansion steps are
described by explicit descriptors (``AlphaNegNegStep`` ...); the search in
:func:`find_step` reconstructs a descriptor from two consecutive tableaux.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .sexpr import show
from .skolem import EMPTY_RECORD, SkoRecord, get_strategy
from .syntax import (
    All, Bot, BoundVar, Form, FreeVar, Fun, Neg, Or, Pred, Term,
    function_symbols, fv, is_locally_closed, open_var, subst,
)

LEFT = "L"
RIGHT = "R"


class TableauError(Exception):
    pass


class NotABranch(TableauError):
    pass


class NotAPath(TableauError):
    pass


class AlreadyExpanded(TableauError):
    pass


class RuleNotApplicable(TableauError):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


@dataclass(frozen=True)
class TableauTree:
    label: tuple
    children: tuple = ()

    def __post_init__(self):
        if not isinstance(self.label, tuple):
            object.__setattr__(self, "label", tuple(self.label))
        if len(self.children) > 2:
            raise ValueError("tableau nodes have at most two children")


@dataclass(frozen=True)
class Tableau:
    tree: TableauTree
    symbols: SkoRecord = EMPTY_RECORD


def single_node(gamma: Iterable[Form]) -> Tableau:
    return Tableau(TableauTree(tuple(gamma)), EMPTY_RECORD)


def _tree(T) -> TableauTree:
    return T.tree if isinstance(T, Tableau) else T


def _step(node: TableauTree, step: str):
    if step == LEFT and node.children:
        return node.children[0]
    if step == RIGHT and len(node.children) == 2:
        return node.children[1]
    return None


def node_at(T, B: Sequence[str]) -> TableauTree:
    node = _tree(T)
    for s in B:
        node = _step(node, s)
        if node is None:
            raise NotAPath(f"path {''.join(B) or '<root>'} leaves the tree")
    return node


def is_branch_of(B: Sequence[str], T) -> bool:
    try:
        return not node_at(T, B).children
    except NotAPath:
        return False


def get_context(B: Sequence[str], T) -> list:
    """Labels from the root down to the end of ``B`` (a prefix path is allowed)."""
    node = _tree(T)
    out = list(node.label)
    for s in B:
        node = _step(node, s)
        if node is None:
            raise NotABranch(f"{''.join(B)} is not a path of the tableau")
        out.extend(node.label)
    return out


def is_on_branch(F: Form, B: Sequence[str], T) -> bool:
    if not is_branch_of(B, T):
        return False
    return F in get_context(B, T)


def branches(T) -> list:
    """All root-to-leaf paths, left to right."""
    out = []
    stack = [(_tree(T), ())]
    while stack:
        node, path = stack.pop()
        if not node.children:
            out.append(path)
            continue
        for step, child in reversed(list(zip((LEFT, RIGHT), node.children))):
            stack.append((child, path + (step,)))
    return out


def get_all_formulas(T) -> frozenset:
    acc = set()
    stack = [_tree(T)]
    while stack:
        node = stack.pop()
        acc.update(node.label)
        stack.extend(node.children)
    return frozenset(acc)


def replace_child(B: Sequence[str], T, new: TableauTree) -> TableauTree:
    """Replace the subtree addressed by ``B``."""
    tree = _tree(T)
    if not B:
        return new
    child = _step(tree, B[0])
    if child is None:
        raise NotAPath(f"path {''.join(B)} leaves the tree")
    replaced = replace_child(B[1:], child, new)
    kids = list(tree.children)
    kids[0 if B[0] == LEFT else 1] = replaced
    return TableauTree(tree.label, tuple(kids))


def expand_tableau_branch(left: Optional[Sequence[Form]], right: Optional[Sequence[Form]],
                          B: Sequence[str], T: Tableau) -> Tableau:
    """Attach the given labels as children of the last node of ``B``."""
    if left is None:
        raise ValueError("a left child label is required (unary expansions extend the left child)")
    try:
        node = node_at(T, B)
    except NotAPath:
        raise NotABranch(f"{''.join(B)} is not a path of the tableau") from None
    if node.children:
        raise AlreadyExpanded(f"node at {''.join(B) or '<root>'} already has children")
    kids = [TableauTree(tuple(left))]
    if right is not None:
        kids.append(TableauTree(tuple(right)))
    new = TableauTree(node.label, tuple(kids))
    return Tableau(replace_child(B, T, new), T.symbols)


# -- expansion descriptors ----------------------------------------------------

@dataclass(frozen=True)
class AlphaNegNegStep:
    branch: tuple
    F: Form  # premise is Neg(Neg F)


@dataclass(frozen=True)
class AlphaNegOrStep:
    branch: tuple
    F: Form
    G: Form  # premise is Neg(Or F G)


@dataclass(frozen=True)
class BetaOrStep:
    branch: tuple
    F: Form
    G: Form  # premise is Or F G


@dataclass(frozen=True)
class GammaAllStep:
    branch: tuple
    F: Form  # premise is All F
    var: str


@dataclass(frozen=True)
class DeltaNegAllStep:
    branch: tuple
    F: Form  # premise is Neg(All F)
    term: Term


def premise(step) -> Form:
    if isinstance(step, AlphaNegNegStep):
        return Neg(Neg(step.F))
    if isinstance(step, AlphaNegOrStep):
        return Neg(Or(step.F, step.G))
    if isinstance(step, BetaOrStep):
        return Or(step.F, step.G)
    if isinstance(step, GammaAllStep):
        return All(step.F)
    if isinstance(step, DeltaNegAllStep):
        return Neg(All(step.F))
    raise TypeError(f"not an expansion descriptor: {step!r}")


def expansion_step(strategy, T: Tableau, step) -> Tableau:
    """Apply one expansion rule; raises :class:`RuleNotApplicable` on a failed side condition."""
    B = tuple(step.branch)
    if not is_branch_of(B, T):
        raise RuleNotApplicable(f"{''.join(B) or '<root>'} is not a branch of the tableau")
    ctx = get_context(B, T)
    P = premise(step)
    if P not in ctx:
        raise RuleNotApplicable(f"premise {show(P)} is not on the branch")
    if isinstance(step, AlphaNegNegStep):
        return expand_tableau_branch([step.F], None, B, T)
    if isinstance(step, AlphaNegOrStep):
        return expand_tableau_branch([Neg(step.F), Neg(step.G)], None, B, T)
    if isinstance(step, BetaOrStep):
        return expand_tableau_branch([step.F], [step.G], B, T)
    if isinstance(step, GammaAllStep):
        return expand_tableau_branch([open_var(step.F, 0, FreeVar(step.var))], None, B, T)
    strategy = get_strategy(strategy)
    t = step.term
    reason = strategy.violation(t, P, T.symbols, fv(ctx), function_symbols(get_all_formulas(T)))
    if reason is not None:
        raise RuleNotApplicable(reason)
    symbs = strategy.add_symbol(T.symbols, strategy.symbol(t), P)
    T2 = expand_tableau_branch([Neg(open_var(step.F, 0, t))], None, B, T)
    return Tableau(T2.tree, symbs)


# -- closure ---------------------------------------------------------------------

def context_closed(ctx: Iterable[Form], sigma) -> bool:
    """Bot on the branch, or ``F@[sigma] = Neg (G@[sigma])`` for some F, G on it."""
    seen = set()
    for F in ctx:
        if isinstance(F, Bot):
            return True
        seen.add(subst(F, sigma))
    return any(isinstance(F, Neg) and F.body in seen for F in seen)


def is_tableau_closed(T, sigma) -> bool:
    return all(context_closed(get_context(B, T), sigma) for B in branches(T))


# -- expansion sequences ---------------------------------------------------------

def match_open(F, G):
    """Find ``u`` with ``open_var(F, 0, u) == G``.

    Returns ``(True, u)`` on success, ``u`` being None when index 0 does not
    occur in ``F`` (any term works), or ``(False, None)``.
    """
    slot: list = []

    def mt(s, t, k):
        if isinstance(s, BoundVar) and s.index == k:
            if not is_locally_closed(t):
                return False
            if slot:
                return slot[0] == t
            slot.append(t)
            return True
        if type(s) is not type(t):
            return False
        if isinstance(s, Fun):
            return s.symbol == t.symbol and len(s.args) == len(t.args) and all(
                mt(x, y, k) for x, y in zip(s.args, t.args))
        return s == t

    def mf(a, b, k):
        if type(a) is not type(b):
            return False
        if isinstance(a, Pred):
            return a.symbol == b.symbol and len(a.args) == len(b.args) and all(
                mt(x, y, k) for x, y in zip(a.args, b.args))
        if isinstance(a, Neg):
            return mf(a.body, b.body, k)
        if isinstance(a, Or):
            return mf(a.left, b.left, k) and mf(a.right, b.right, k)
        if isinstance(a, All):
            return mf(a.body, b.body, k + 1)
        return True

    if not mf(F, G, 0):
        return False, None
    return True, (slot[0] if slot else None)


def _candidates(strategy, T: Tableau, T2: Tableau, B: tuple, new_labels):
    ctx = get_context(B, T)
    left = new_labels[0]
    for P in dict.fromkeys(ctx):
        if isinstance(P, Neg) and isinstance(P.body, Neg):
            yield AlphaNegNegStep(B, P.body.body)
        elif isinstance(P, Neg) and isinstance(P.body, Or):
            yield AlphaNegOrStep(B, P.body.left, P.body.right)
        elif isinstance(P, Or):
            yield BetaOrStep(B, P.left, P.right)
        elif isinstance(P, All) and len(left) == 1:
            ok, u = match_open(P.body, left[0])
            if ok and u is None:
                yield GammaAllStep(B, P.body, "X")
            elif ok and isinstance(u, FreeVar):
                yield GammaAllStep(B, P.body, u.name)
        elif isinstance(P, Neg) and isinstance(P.body, All) and len(left) == 1 \
                and isinstance(left[0], Neg):
            ok, u = match_open(P.body.body, left[0].body)
            if not ok:
                continue
            if u is None:
                added = T2.symbols.used - T.symbols.used
                if len(added) == 1:
                    f = next(iter(added))
                else:
                    f = T2.symbols.assoc.get(P)
                if f is None:
                    continue
                args = strategy.required_args(P, fv(ctx))
                u = Fun(f, tuple(FreeVar(x) for x in args))
            yield DeltaNegAllStep(B, P.body.body, u)


def find_step(strategy, T: Tableau, T2: Tableau):
    """A descriptor ``d`` with ``expansion_step(strategy, T, d) == T2``, or None."""
    strategy = get_strategy(strategy)
    for B in branches(T):
        try:
            node2 = node_at(T2, B)
        except NotAPath:
            continue
        if not node2.children:
            continue
        labels = [c.label for c in node2.children]
        for desc in _candidates(strategy, T, T2, B, labels):
            try:
                if expansion_step(strategy, T, desc) == T2:
                    return desc
            except TableauError:
                continue
        return None
    return None


@dataclass(frozen=True)
class SequenceCheck:
    ok: bool
    index: int = -1
    clause: str = ""
    reason: str = ""

    def __bool__(self):
        return self.ok


def check_expansion_sequence(strategy, gamma: Sequence[Form], sigma, seq: Sequence[Tableau],
                             steps: Optional[Sequence] = None) -> SequenceCheck:
    """Check that ``seq`` starts at the single-node tableau for ``gamma``, that each
    element expands to the next, and that the last one is closed under ``sigma``.

    With ``steps`` (one descriptor per transition) each transition is replayed;
    otherwise a justifying descriptor is searched for.
    """
    strategy = get_strategy(strategy)
    if not seq:
        return SequenceCheck(False, 0, "i", "empty sequence")
    if seq[0] != single_node(gamma):
        return SequenceCheck(False, 0, "i", "first tableau is not the single-node context tableau")
    if steps is not None and len(steps) != len(seq) - 1:
        return SequenceCheck(False, 0, "ii", "descriptor count does not match the sequence")
    for i in range(len(seq) - 1):
        if steps is not None:
            try:
                ok = expansion_step(strategy, seq[i], steps[i]) == seq[i + 1]
            except TableauError as e:
                return SequenceCheck(False, i, "ii", str(e))
        else:
            ok = find_step(strategy, seq[i], seq[i + 1]) is not None
        if not ok:
            return SequenceCheck(False, i, "ii", f"tableau {i + 1} is not an expansion of tableau {i}")
    if not is_tableau_closed(seq[-1], sigma):
        return SequenceCheck(False, len(seq) - 1, "iii", "last tableau is not closed")
    return SequenceCheck(True)


# -- debugging -------------------------------------------------------------------

def render(T) -> str:
    """Indented rendering: one line per node, prefixed by its path."""
    lines = []

    def walk(node, path):
        tag = "".join(path) or "."
        body = ", ".join(show(F) for F in node.label)
        lines.append(f"{'  ' * len(path)}[{tag}] {body}")
        for step, child in zip((LEFT, RIGHT), node.children):
            walk(child, path + (step,))

    walk(_tree(T), ())
    return "\n".join(lines)
