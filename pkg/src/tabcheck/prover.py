"""A small free-variable tableau prover that emits checkable certificates.

Depth-first branch expansion with priority alpha, delta, beta, gamma and
iterative deepening on the number of gamma uses per universal formula per
branch.  Branches close on Bot, on a syntactic complementary pair, or on a
pair of literals that unify; the bindings form one global substitution
threaded left to right through the tree, with backtracking into earlier
closure choices when a later branch cannot be closed.
"""

from __future__ import annotations

import sys
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .checker import (
    AlphaNegNeg, AlphaNegOr, BetaOr, Certificate, DeltaNegAll, GammaAll, LEAF, Leaf, Node,
    check_proof, format_diagnostics, iter_nodes, unary,
)
from .skolem import EMPTY_RECORD, get_strategy
from .syntax import (
    All, Bot, FreeVar, Fun, Neg, Or, Pred, function_symbols, fv, is_form, is_locally_closed, open_var,
)

GAMMA_PREFIX = "_G"
SKOLEM_PREFIX = "_sk"


class ProverError(ValueError):
    pass


class RejectedCertificate(ValueError):
    pass


@dataclass(frozen=True)
class SearchConfig:
    strategy: object = "inner"
    gamma_limit: int = 3
    depth_limit: int = 200
    node_budget: int = 200_000

    def __post_init__(self):
        object.__setattr__(self, "strategy", get_strategy(self.strategy))
        for name in ("gamma_limit", "depth_limit", "node_budget"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1")


@dataclass(frozen=True)
class ProofStats:
    branches: int
    rule_counts: dict = field(default_factory=dict)
    gamma_instantiations: int = 0


@dataclass(frozen=True)
class SearchResult:
    status: str  # "proved", "gave-up" or "exhausted"
    certificate: Optional[Certificate] = None
    stats: Optional[ProofStats] = None
    nodes: int = 0
    gamma_limit: int = 0


# -- unification -------------------------------------------------------------------

def _walk(t, b):
    while isinstance(t, FreeVar) and t.name in b:
        t = b[t.name]
    return t


def _occurs(x, t, b) -> bool:
    stack = [t]
    while stack:
        u = _walk(stack.pop(), b)
        if isinstance(u, FreeVar):
            if u.name == x:
                return True
        elif isinstance(u, Fun):
            stack.extend(u.args)
    return False


def _gamma_var(name: str) -> bool:
    return name.startswith(GAMMA_PREFIX)


def _any_var(name: str) -> bool:
    return True


def _unify(s, t, b, can_bind=_gamma_var):
    """Extend triangular bindings ``b`` so that ``s`` and ``t`` unify; None on failure.

    Returns ``b`` itself when no new binding was needed, else a new dict.
    """
    stack = [(s, t)]
    out = b
    while stack:
        x, y = stack.pop()
        x, y = _walk(x, out), _walk(y, out)
        if x == y:
            continue
        if not (isinstance(x, FreeVar) and can_bind(x.name)):
            x, y = y, x
        if isinstance(x, FreeVar) and can_bind(x.name):
            if _occurs(x.name, y, out):
                return None
            if out is b:
                out = dict(b)
            out[x.name] = y
            continue
        if isinstance(x, Fun) and isinstance(y, Fun) and x.symbol == y.symbol and len(x.args) == len(y.args):
            stack.extend(zip(x.args, y.args))
            continue
        return None
    return out


def _resolve(t, b):
    t = _walk(t, b)
    if isinstance(t, Fun):
        return Fun(t.symbol, tuple(_resolve(a, b) for a in t.args))
    return t


def unify(t1, t2) -> Optional[dict]:
    """Most general unifier of two locally closed terms (idempotent), or None."""
    for t in (t1, t2):
        if not is_locally_closed(t):
            raise ValueError("unify expects locally closed terms")
    b = _unify(t1, t2, {}, _any_var)
    if b is None:
        return None
    return {x: _resolve(FreeVar(x), b) for x in b}


def _resolve_atom(P: Pred, b):
    return Pred(P.symbol, tuple(_resolve(a, b) for a in P.args))


def _unify_atoms(P: Pred, Q: Pred, b):
    if P.symbol != Q.symbol or len(P.args) != len(Q.args):
        return None
    out = b
    for s, t in zip(P.args, Q.args):
        out = _unify(s, t, out)
        if out is None:
            return None
    return out


# -- search ------------------------------------------------------------------------

class _Budget(Exception):
    pass


def _literal(F):
    """``(positive?, atom)`` for literals, else None."""
    if isinstance(F, Pred):
        return True, F
    if isinstance(F, Neg) and isinstance(F.body, Pred):
        return False, F.body
    return None


def _kind(F):
    if isinstance(F, Neg):
        G = F.body
        if isinstance(G, Neg):
            return "nn"
        if isinstance(G, Or):
            return "no"
        if isinstance(G, All):
            return "delta"
        return None
    if isinstance(F, Or):
        return "beta"
    if isinstance(F, All):
        return "gamma"
    return None


_PRIORITY = {"nn": 0, "no": 0, "delta": 1, "beta": 2}


class _Search:
    def __init__(self, cfg: SearchConfig, gamma, limit: int, nodes_used: int):
        self.cfg = cfg
        self.strategy = cfg.strategy
        self.base_funcs = function_symbols(gamma)
        self.limit = limit
        self.nodes = nodes_used
        self.next_var = 0
        self.gamma_blocked = False
        self.depth_hit = False

    def tick(self):
        self.nodes += 1
        if self.nodes > self.cfg.node_budget:
            raise _Budget()

    def fresh_var(self) -> str:
        v = f"{GAMMA_PREFIX}{self.next_var}"
        self.next_var += 1
        return v

    # A branch state: ctx (tuple of formulas in checker order),
    # agenda (tuple of pending non-literal, non-universal formulas),
    # gammas (tuple of [formula, uses]) and the set of formulas seen.

    def branch(self, ctx, start, agenda, gammas, seen, b, record):
        """Yield ``(tree, bindings, record)`` for every way found to close the branch."""
        self.tick()
        new = ctx[start:]
        for F in new:
            if isinstance(F, Bot) or (isinstance(F, Neg) and F.body in seen) or Neg(F) in seen:
                yield LEAF, b, record
                return
        # pairs already equal under the current bindings
        pos, neg = {}, {}
        for F in ctx:
            lit = _literal(F)
            if lit is None:
                continue
            sign, atom = lit
            r = _resolve_atom(atom, b)
            (pos if sign else neg).setdefault(r, F)
        for r, F in pos.items():
            if r in neg:
                yield Leaf((neg[r], F)), b, record
                return
        # pairs needing new bindings, involving at least one new literal
        alternatives = []
        new_ids = {id(F) for F in new}
        lits = [(F, _literal(F)) for F in dict.fromkeys(ctx)]
        lits = [(F, l) for F, l in lits if l is not None]
        for i, (F, (sf, af)) in enumerate(lits):
            for G, (sg, ag) in lits[i + 1:]:
                if sf == sg or (id(F) not in new_ids and id(G) not in new_ids):
                    continue
                b2 = _unify_atoms(af, ag, b)
                if b2 is not None and b2 is not b:
                    pair = (F, G) if not sf else (G, F)
                    alternatives.append((pair, b2))
        for pair, b2 in alternatives:
            yield Leaf(pair), b2, record
        yield from self.expand(ctx, agenda, gammas, seen, b, record)

    def add(self, ctx, agenda, gammas, seen, forms):
        agenda = list(agenda)
        gammas = list(gammas)
        seen = set(seen)
        for F in forms:
            if F in seen:
                continue
            seen.add(F)
            k = _kind(F)
            if k == "gamma":
                gammas.append((F, 0))
            elif k is not None:
                agenda.append(F)
        return ctx + tuple(forms), tuple(agenda), tuple(gammas), frozenset(seen)

    def child(self, ctx, agenda, gammas, seen, forms, b, record):
        ctx2, a2, g2, s2 = self.add(ctx, agenda, gammas, seen, forms)
        if len(ctx2) > self.cfg.depth_limit:
            self.depth_hit = True
            return
        yield from self.branch(ctx2, len(ctx), a2, g2, s2, b, record)

    def expand(self, ctx, agenda, gammas, seen, b, record):
        if agenda:
            i = min(range(len(agenda)), key=lambda j: _PRIORITY[_kind(agenda[j])])
            F = agenda[i]
            rest = agenda[:i] + agenda[i + 1:]
            k = _kind(F)
            if k == "nn":
                for R, b2, r2 in self.child(ctx, rest, gammas, seen, [F.body.body], b, record):
                    yield unary(AlphaNegNeg(F), R), b2, r2
                return
            if k == "no":
                forms = [Neg(F.body.left), Neg(F.body.right)]
                for R, b2, r2 in self.child(ctx, rest, gammas, seen, forms, b, record):
                    yield unary(AlphaNegOr(F), R), b2, r2
                return
            if k == "delta":
                t = self.strategy.make_term(F, record, fv(ctx), self.base_funcs, prefix=SKOLEM_PREFIX)
                reason = self.strategy.violation(t, F, record, fv(ctx), self.base_funcs | record.used)
                if reason is not None:  # pragma: no cover - make_term builds valid terms
                    raise ProverError(reason)
                r1 = self.strategy.add_symbol(record, t.symbol, F)
                forms = [Neg(open_var(F.body.body, 0, t))]
                for R, b2, r2 in self.child(ctx, rest, gammas, seen, forms, b, r1):
                    yield unary(DeltaNegAll(F, t), R), b2, r2
                return
            # beta
            for L, b1, r1 in self.child(ctx, rest, gammas, seen, [F.left], b, record):
                found = False
                for Rt, b2, r2 in self.child(ctx, rest, gammas, seen, [F.right], b1, r1):
                    found = True
                    yield Node(L, BetaOr(F), Rt), b2, r2
                if not found and b1 is b:
                    # the left proof constrained nothing; other left proofs cannot help
                    return
            return
        if not gammas:
            return
        j = min(range(len(gammas)), key=lambda k: gammas[k][1])
        F, uses = gammas[j]
        if uses >= self.limit:
            self.gamma_blocked = True
            return
        gammas = gammas[:j] + gammas[j + 1:] + ((F, uses + 1),)
        x = self.fresh_var()
        forms = [open_var(F.body, 0, FreeVar(x))]
        for R, b2, r2 in self.child(ctx, (), gammas, seen, forms, b, record):
            yield unary(GammaAll(F, x), R), b2, r2


def _tree_vars(R) -> set:
    out = set()
    for _, node in iter_nodes(R):
        if isinstance(node, Leaf) and node.pair is not None:
            out |= fv(list(node.pair))
        elif isinstance(node, Node):
            out |= fv(node.rule.F)
            if isinstance(node.rule, GammaAll):
                out.add(node.rule.var)
    return out


def _check_input(gamma):
    for F in gamma:
        if not is_form(F):
            raise ProverError(f"not a formula: {F!r}")
        if not is_locally_closed(F):
            raise ProverError("context formulas must be locally closed")
    names = fv(gamma) | function_symbols(gamma)
    bad = sorted(n for n in names if n.startswith((GAMMA_PREFIX, SKOLEM_PREFIX)))
    if bad:
        raise ProverError(f"reserved names in input: {', '.join(bad)}")


def search(gamma: Sequence, cfg: SearchConfig = SearchConfig()) -> SearchResult:
    """Refute ``gamma``; the result says whether a proof was found, the budget ran
    out, or the search space was exhausted without any gamma limit being hit."""
    gamma = list(gamma)
    _check_input(gamma)
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 20 * cfg.depth_limit + 10_000))
    nodes = 0
    try:
        for limit in range(1, cfg.gamma_limit + 1):
            s = _Search(cfg, gamma, limit, nodes)
            try:
                ctx, a, g, seen = s.add((), (), (), frozenset(), gamma)
                sol = next(s.branch(ctx, 0, a, g, seen, {}, EMPTY_RECORD), None)
            except _Budget:
                return SearchResult("gave-up", nodes=s.nodes, gamma_limit=limit)
            nodes = s.nodes
            if sol is not None:
                tree, b, _ = sol
                used = _tree_vars(tree)
                sigma = {x: _resolve(FreeVar(x), b) for x in sorted(b) if x in used}
                cert = Certificate(tuple(gamma), sigma, cfg.strategy, tree)
                return SearchResult("proved", cert, stats(cert), nodes, limit)
            if not s.gamma_blocked and not s.depth_hit:
                return SearchResult("exhausted", nodes=nodes, gamma_limit=limit)
        return SearchResult("gave-up", nodes=nodes, gamma_limit=cfg.gamma_limit)
    finally:
        sys.setrecursionlimit(old)


def prove(gamma: Sequence, cfg: SearchConfig = SearchConfig()):
    """``(certificate, stats)`` for a refutation of ``gamma``, or None."""
    r = search(gamma, cfg)
    if r.status != "proved":
        return None
    return r.certificate, r.stats


def stats(cert: Certificate) -> ProofStats:
    outcome = check_proof(cert)
    if not outcome.status:
        raise RejectedCertificate(format_diagnostics(outcome).strip())
    counts: Counter = Counter()
    leaves = 0
    for _, node in iter_nodes(cert.tree):
        if isinstance(node, Leaf):
            leaves += 1
        else:
            counts[node.rule.name] += 1
    return ProofStats(leaves, dict(sorted(counts.items())), counts.get("gamma-all", 0))
