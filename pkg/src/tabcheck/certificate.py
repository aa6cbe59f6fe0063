"""Certificate file format.

::

    (certificate
      (strategy inner)
      (context <form>*)
      (substitution (<var> <term>)*)
      (tree <ruletree>))

    <ruletree> ::= (leaf) | (leaf <form> <form>)
                 | (alpha-neg-neg <form> <ruletree>) | (alpha-neg-or <form> <ruletree>)
                 | (beta-or <form> <ruletree> <ruletree>)
                 | (gamma-all <form> <var> <ruletree>)
                 | (delta-neg-all <form> <term> <ruletree>)

``(beta-or F G R1 R2)`` is accepted as sugar for ``(beta-or (or F G) R1 R2)``.
Printing is deterministic (sections on their own lines, substitution sorted
by variable, UTF-8, trailing newline), so ``print(parse(x)) == x`` for any
printed certificate.
"""

from __future__ import annotations

from .checker import (
    AlphaNegNeg, AlphaNegOr, BetaOr, Certificate, DeltaNegAll, GammaAll, LEAF, Leaf, Node,
    UNARY, unary,
)
from .sexpr import (
    SexprError, dumps, form_to_sexpr, loads, sexpr_to_form, sexpr_to_term, term_to_sexpr,
)
from .syntax import Or, check_substitution


class CertificateError(ValueError):
    pass


def tree_to_sexpr(R):
    def conv(R):
        if isinstance(R, Leaf):
            if R.pair is None:
                return ["leaf"]
            return ["leaf", form_to_sexpr(R.pair[0]), form_to_sexpr(R.pair[1])]
        rule = R.rule
        if isinstance(rule, UNARY) and R.right != LEAF:
            raise CertificateError(f"{rule.name} node with a non-empty right subtree cannot be printed")
        head = [rule.name, form_to_sexpr(rule.F)]
        if isinstance(rule, GammaAll):
            head.append(rule.var)
        elif isinstance(rule, DeltaNegAll):
            head.append(term_to_sexpr(rule.term))
        if isinstance(rule, BetaOr):
            return head + [conv(R.left), conv(R.right)]
        return head + [conv(R.left)]

    return conv(R)


def sexpr_to_tree(x):
    if not isinstance(x, list) or not x or not isinstance(x[0], str):
        raise CertificateError(f"expected a rule tree, got {dumps(x) if isinstance(x, (list, str)) else x!r}")
    head, rest = x[0], x[1:]
    if head == "leaf":
        if not rest:
            return LEAF
        if len(rest) == 2:
            return Leaf((sexpr_to_form(rest[0]), sexpr_to_form(rest[1])))
        raise CertificateError(f"leaf takes zero or two formulas: {dumps(x)}")
    if head in ("alpha-neg-neg", "alpha-neg-or"):
        if len(rest) != 2:
            raise CertificateError(f"{head} takes a formula and one subtree: {dumps(x)[:80]}")
        cls = AlphaNegNeg if head == "alpha-neg-neg" else AlphaNegOr
        return unary(cls(sexpr_to_form(rest[0])), sexpr_to_tree(rest[1]))
    if head == "beta-or":
        if len(rest) == 3:
            F = sexpr_to_form(rest[0])
        elif len(rest) == 4:
            F = Or(sexpr_to_form(rest[0]), sexpr_to_form(rest[1]))
        else:
            raise CertificateError(f"beta-or takes a formula and two subtrees: {dumps(x)[:80]}")
        return Node(sexpr_to_tree(rest[-2]), BetaOr(F), sexpr_to_tree(rest[-1]))
    if head == "gamma-all":
        if len(rest) != 3 or not isinstance(rest[1], str):
            raise CertificateError(f"gamma-all takes a formula, a variable and one subtree: {dumps(x)[:80]}")
        return unary(GammaAll(sexpr_to_form(rest[0]), rest[1]), sexpr_to_tree(rest[2]))
    if head == "delta-neg-all":
        if len(rest) != 3:
            raise CertificateError(f"delta-neg-all takes a formula, a term and one subtree: {dumps(x)[:80]}")
        return unary(DeltaNegAll(sexpr_to_form(rest[0]), sexpr_to_term(rest[1])), sexpr_to_tree(rest[2]))
    raise CertificateError(f"unknown rule {head!r}")


def print_certificate(cert: Certificate) -> str:
    ctx = " ".join(dumps(form_to_sexpr(F)) for F in cert.context)
    sub = " ".join(dumps([x, term_to_sexpr(cert.sigma[x])]) for x in sorted(cert.sigma))
    lines = [
        "(certificate",
        f"  (strategy {cert.strategy.name})",
        f"  (context{' ' + ctx if ctx else ''})",
        f"  (substitution{' ' + sub if sub else ''})",
        f"  (tree {dumps(tree_to_sexpr(cert.tree))}))",
    ]
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> Certificate:
    try:
        x = loads(text)
    except SexprError as e:
        raise CertificateError(str(e)) from None
    if not isinstance(x, list) or not x or x[0] != "certificate":
        raise CertificateError("expected (certificate ...)")
    sections = {}
    for sec in x[1:]:
        if not isinstance(sec, list) or not sec or not isinstance(sec[0], str):
            raise CertificateError("malformed certificate section")
        if sec[0] in sections:
            raise CertificateError(f"duplicate section {sec[0]}")
        sections[sec[0]] = sec[1:]
    expected = ["strategy", "context", "substitution", "tree"]
    if [s[0] for s in x[1:]] != expected:
        raise CertificateError(f"sections must be {' '.join(expected)} in that order")
    try:
        strat = sections["strategy"]
        if len(strat) != 1 or not isinstance(strat[0], str):
            raise CertificateError("strategy takes one name")
        context = tuple(sexpr_to_form(f) for f in sections["context"])
        sigma = {}
        for pair in sections["substitution"]:
            if not isinstance(pair, list) or len(pair) != 2 or not isinstance(pair[0], str):
                raise CertificateError("substitution entries are (var term)")
            if pair[0] in sigma:
                raise CertificateError(f"variable {pair[0]} bound twice")
            sigma[pair[0]] = sexpr_to_term(pair[1])
        check_substitution(sigma)
        if len(sections["tree"]) != 1:
            raise CertificateError("tree takes one rule tree")
        tree = sexpr_to_tree(sections["tree"][0])
        return Certificate(context, sigma, strat[0], tree)
    except (SexprError, ValueError) as e:
        if isinstance(e, CertificateError):
            raise
        raise CertificateError(str(e)) from None
