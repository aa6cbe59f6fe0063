"""Systematic certificate mutations used to exercise the checker's rejections.

Each mutation has a site finder (paths in the rule tree where it applies)
and a rewriter producing the mutated certificate:

``drop-pair``
    a closing leaf ``(leaf F G)`` loses its pair and becomes ``(leaf)``;
``retarget``
    a rule's target formula is renamed so that it no longer occurs in the context;
``skolem-args``
    a delta rule's Skolem term loses its last argument, or gains one if it has none.
"""

from __future__ import annotations

from .checker import (
    AlphaNegNeg, AlphaNegOr, BetaOr, Certificate, DeltaNegAll, GammaAll, Leaf, Node, iter_nodes,
    replace_subtree,
)
from .syntax import All, Bot, Form, FreeVar, Fun, Neg, Or, Pred

ABSENT_PREFIX = "absent_"


def _rename_atoms(F: Form) -> Form:
    if isinstance(F, Pred):
        return Pred(ABSENT_PREFIX + F.symbol, F.args)
    if isinstance(F, Bot):
        return Pred(ABSENT_PREFIX + "bot")
    if isinstance(F, Neg):
        return Neg(_rename_atoms(F.body))
    if isinstance(F, Or):
        return Or(_rename_atoms(F.left), _rename_atoms(F.right))
    return All(_rename_atoms(F.body))


def _retarget(rule):
    F = _rename_atoms(rule.F)
    if isinstance(rule, GammaAll):
        return GammaAll(F, rule.var)
    if isinstance(rule, DeltaNegAll):
        return DeltaNegAll(F, rule.term)
    return type(rule)(F)


def _at(R, path):
    for step in path:
        R = R.left if step == "L" else R.right
    return R


def mutation_sites(name: str, cert: Certificate) -> list:
    """Rule-tree paths where mutation ``name`` applies, in pre-order."""
    if name == "drop-pair":
        return [p for p, r in iter_nodes(cert.tree) if isinstance(r, Leaf) and r.pair is not None]
    if name == "retarget":
        return [p for p, r in iter_nodes(cert.tree) if isinstance(r, Node)]
    if name == "skolem-args":
        return [p for p, r in iter_nodes(cert.tree)
                if isinstance(r, Node) and isinstance(r.rule, DeltaNegAll) and isinstance(r.rule.term, Fun)]
    raise ValueError(f"unknown mutation {name!r}")


def drop_pair(cert: Certificate, path) -> Certificate:
    return Certificate(cert.context, cert.sigma, cert.strategy, replace_subtree(cert.tree, path, Leaf()))


def retarget(cert: Certificate, path) -> Certificate:
    R = _at(cert.tree, path)
    new = Node(R.left, _retarget(R.rule), R.right)
    return Certificate(cert.context, cert.sigma, cert.strategy, replace_subtree(cert.tree, path, new))


def perturb_skolem_args(cert: Certificate, path) -> Certificate:
    R = _at(cert.tree, path)
    t = R.rule.term
    args = t.args[:-1] if t.args else (FreeVar("X"),)
    new = Node(R.left, DeltaNegAll(R.rule.F, Fun(t.symbol, args)), R.right)
    return Certificate(cert.context, cert.sigma, cert.strategy, replace_subtree(cert.tree, path, new))


MUTATIONS = {
    "drop-pair": drop_pair,
    "retarget": retarget,
    "skolem-args": perturb_skolem_args,
}

# rule names that a diagnostic must mention for each mutation to count as identifying the rule
RULE_NAMES = ("leaf", AlphaNegNeg.name, AlphaNegOr.name, BetaOr.name, GammaAll.name, DeltaNegAll.name)
