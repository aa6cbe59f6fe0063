"""TPTP FOF (no equality) reader and writer, problem assembly, and the Phi_n family.

Supported: ``fof`` units, connectives ``~ & | => <= <=> <~> ~| ~&``,
quantifiers ``!`` and ``?`` over bracketed variable lists, ``$true`` and
``$false``, ``%`` and ``/* */`` comments.  ``&`` and ``|`` chain
left-associatively; other binary connectives need parentheses when nested.
Unit annotations are read and dropped.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .extended import (
    EAll, EAnd, EBot, EEx, EFun, EIff, EImp, ENeg, EOr, EPred, ETop, EVar, eform_names,
    translate_eform,
)
from .syntax import Neg

RESERVED_PREFIXES = ("_sk", "_G")

AXIOM_ROLES = frozenset({
    "axiom", "hypothesis", "definition", "assumption", "lemma", "theorem", "corollary", "plain",
})
ROLES = AXIOM_ROLES | {"conjecture", "negated_conjecture"}


class TptpError(ValueError):
    pass


class ParseError(TptpError):
    def __init__(self, line, col, expected, found=None):
        got = f", found {found!r}" if found is not None else ""
        super().__init__(f"line {line}, column {col}: expected {expected}{got}")
        self.line = line
        self.col = col
        self.expected = expected


class UnsupportedFeature(TptpError):
    def __init__(self, feature, line=None, col=None):
        where = f" (line {line}, column {col})" if line is not None else ""
        super().__init__(f"unsupported TPTP feature: {feature}{where}")
        self.feature = feature


class MultipleConjectures(TptpError):
    pass


class ReservedSymbol(TptpError):
    pass


@dataclass(frozen=True)
class TptpUnit:
    name: str
    role: str
    formula: object  # EForm


@dataclass(frozen=True)
class TptpProblem:
    units: tuple

    def __post_init__(self):
        object.__setattr__(self, "units", tuple(self.units))


# -- lexer ----------------------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<comment>%[^\n]*|/\*.*?\*/)
  | (?P<op><=>|<~>|=>|<=|~\||~&|!=|[()\[\],.:!?~&|=])
  | (?P<upper>[A-Z][A-Za-z0-9_]*)
  | (?P<lower>[a-z][A-Za-z0-9_]*)
  | (?P<dollar>\$\$?[a-z][A-Za-z0-9_]*)
  | (?P<quoted>'(?:[^'\\]|\\.)*')
  | (?P<distinct>"(?:[^"\\]|\\.)*")
  | (?P<number>[+-]?[0-9][0-9A-Za-z./+-]*)
""", re.VERBOSE | re.DOTALL)


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _lex(text: str) -> list:
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(line, pos - line_start + 1, "a token", text[pos])
        kind = m.lastgroup
        s = m.group()
        if kind not in ("ws", "comment"):
            if kind == "quoted":
                s = re.sub(r"\\(.)", r"\1", s[1:-1])
                kind = "lower"
            out.append(_Tok(kind, s, line, pos - line_start + 1))
        nl = s.count("\n") if kind in ("ws", "comment") else 0
        if nl:
            line += nl
            line_start = pos + m.group().rindex("\n") + 1
        pos = m.end()
    out.append(_Tok("eof", "", line, pos - line_start + 1))
    return out


# -- parser -----------------------------------------------------------------------------

_ASSOC = {"&": EAnd, "|": EOr}
_NONASSOC = ("=>", "<=", "<=>", "<~>", "~|", "~&")


class _Parser:
    def __init__(self, text):
        self.toks = _lex(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def fail(self, expected):
        t = self.tok
        raise ParseError(t.line, t.col, expected, t.text or "end of input")

    def eat(self, text):
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return
        self.fail(repr(text))

    def at(self, text) -> bool:
        return self.tok.kind == "op" and self.tok.text == text

    def problem(self) -> TptpProblem:
        units = []
        while self.tok.kind != "eof":
            units.append(self.unit())
        conj = [u for u in units if u.role == "conjecture"]
        if len(conj) > 1:
            raise MultipleConjectures(f"{len(conj)} conjectures: {', '.join(u.name for u in conj)}")
        return TptpProblem(units)

    def unit(self) -> TptpUnit:
        t = self.tok
        if t.kind != "lower":
            self.fail("a unit (fof(...).)")
        if t.text in ("cnf", "tff", "thf", "tcf", "tpi"):
            raise UnsupportedFeature(f"{t.text} units", t.line, t.col)
        if t.text == "include":
            raise UnsupportedFeature("include directives", t.line, t.col)
        if t.text != "fof":
            self.fail("fof")
        self.i += 1
        self.eat("(")
        name = self.name()
        self.eat(",")
        rt = self.tok
        if rt.kind != "lower" or rt.text not in ROLES:
            if rt.kind == "lower":
                raise UnsupportedFeature(f"role {rt.text}", rt.line, rt.col)
            self.fail("a formula role")
        self.i += 1
        self.eat(",")
        formula = self.formula()
        if self.at(","):
            self.i += 1
            self.skip_annotations()
        self.eat(")")
        self.eat(".")
        return TptpUnit(name, rt.text, formula)

    def name(self) -> str:
        t = self.tok
        if t.kind in ("lower", "number"):
            self.i += 1
            return t.text
        self.fail("a unit name")

    def skip_annotations(self):
        depth = 0
        while True:
            t = self.tok
            if t.kind == "eof":
                self.fail("')'")
            if t.kind == "op" and t.text in "([":
                depth += 1
            elif t.kind == "op" and t.text in ")]":
                if depth == 0:
                    return
                depth -= 1
            self.i += 1

    def formula(self):
        left = self.unitary()
        t = self.tok
        if t.kind != "op":
            return left
        if t.text in _ASSOC:
            op = t.text
            while self.at(op):
                self.i += 1
                left = _ASSOC[op](left, self.unitary())
            if self.tok.kind == "op" and (self.tok.text in _ASSOC or self.tok.text in _NONASSOC):
                self.fail(f"'{op}' or a closing token (parenthesize mixed connectives)")
            return left
        if t.text in _NONASSOC:
            op = t.text
            self.i += 1
            right = self.unitary()
            if self.tok.kind == "op" and (self.tok.text in _ASSOC or self.tok.text in _NONASSOC):
                self.fail("a closing token (non-associative connective)")
            if op == "=>":
                return EImp(left, right)
            if op == "<=":
                return EImp(right, left)
            if op == "<=>":
                return EIff(left, right)
            if op == "<~>":
                return ENeg(EIff(left, right))
            if op == "~|":
                return ENeg(EOr(left, right))
            return ENeg(EAnd(left, right))
        if t.text in ("=", "!="):
            raise UnsupportedFeature("equality", t.line, t.col)
        return left

    def unitary(self):
        t = self.tok
        if t.kind == "op" and t.text in "!?":
            self.i += 1
            self.eat("[")
            names = [self.variable()]
            while self.at(","):
                self.i += 1
                names.append(self.variable())
            self.eat("]")
            self.eat(":")
            body = self.unitary()
            q = EAll if t.text == "!" else EEx
            for x in reversed(names):
                body = q(x, body)
            return body
        if t.kind == "op" and t.text == "~":
            self.i += 1
            return ENeg(self.unitary())
        if t.kind == "op" and t.text == "(":
            self.i += 1
            f = self.formula()
            self.eat(")")
            return f
        if t.kind == "dollar":
            self.i += 1
            if t.text == "$true":
                return ETop()
            if t.text == "$false":
                return EBot()
            raise UnsupportedFeature(f"defined symbol {t.text}", t.line, t.col)
        if t.kind == "lower":
            sym = self.symbol()
            args = self.arguments()
            if self.at("=") or self.at("!="):
                raise UnsupportedFeature("equality", self.tok.line, self.tok.col)
            return EPred(sym, args)
        if t.kind == "upper":
            self.i += 1
            if self.at("=") or self.at("!="):
                raise UnsupportedFeature("equality", self.tok.line, self.tok.col)
            self.fail("a formula (variables are not formulas)")
        if t.kind in ("number", "distinct"):
            raise UnsupportedFeature("numbers and distinct objects", t.line, t.col)
        self.fail("a formula")

    def variable(self) -> str:
        t = self.tok
        if t.kind != "upper":
            self.fail("a variable")
        self.i += 1
        if self.at(":"):
            # inside the bracket list a colon can only start a type annotation
            raise UnsupportedFeature("typed variables", t.line, t.col)
        return t.text

    def symbol(self) -> str:
        t = self.tok
        self.i += 1
        return t.text

    def arguments(self) -> tuple:
        if not self.at("("):
            return ()
        self.i += 1
        args = [self.term()]
        while self.at(","):
            self.i += 1
            args.append(self.term())
        self.eat(")")
        return tuple(args)

    def term(self):
        t = self.tok
        if t.kind == "upper":
            self.i += 1
            return EVar(t.text)
        if t.kind == "lower":
            sym = self.symbol()
            return EFun(sym, self.arguments())
        if t.kind in ("number", "distinct"):
            raise UnsupportedFeature("numbers and distinct objects", t.line, t.col)
        if t.kind == "dollar":
            raise UnsupportedFeature(f"defined symbol {t.text}", t.line, t.col)
        self.fail("a term")


def parse_tptp(text: str) -> TptpProblem:
    problem = _Parser(text).problem()
    for u in problem.units:
        for name in eform_names(u.formula):
            if name.startswith(RESERVED_PREFIXES):
                raise ReservedSymbol(f"symbol {name!r} in unit {u.name} uses a reserved prefix")
    return problem


# -- printer ---------------------------------------------------------------------------

_LOWER = re.compile(r"[a-z][A-Za-z0-9_]*\Z")
_UPPER = re.compile(r"[A-Z][A-Za-z0-9_]*\Z")


def _atom(s: str) -> str:
    if _LOWER.match(s):
        return s
    return "'" + s.replace("\\", "\\\\").replace("'", "\\'") + "'"


def _var(x: str) -> str:
    if not _UPPER.match(x):
        raise ValueError(f"{x!r} is not a TPTP variable name")
    return x


def print_eterm(t) -> str:
    if isinstance(t, EVar):
        return _var(t.name)
    if not t.args:
        return _atom(t.symbol)
    return f"{_atom(t.symbol)}({','.join(print_eterm(a) for a in t.args)})"


_BINOP = {EAnd: "&", EOr: "|", EImp: "=>", EIff: "<=>"}


def _unitary(F) -> str:
    s = print_eform(F)
    return f"({s})" if type(F) in _BINOP else s


def print_eform(F) -> str:
    if isinstance(F, EBot):
        return "$false"
    if isinstance(F, ETop):
        return "$true"
    if isinstance(F, EPred):
        if not F.args:
            return _atom(F.symbol)
        return f"{_atom(F.symbol)}({','.join(print_eterm(a) for a in F.args)})"
    if isinstance(F, ENeg):
        return f"~ {_unitary(F.body)}"
    if isinstance(F, (EAll, EEx)):
        q = type(F)
        names = []
        while isinstance(F, q):
            names.append(_var(F.var))
            F = F.body
        return f"{'!' if q is EAll else '?'} [{','.join(names)}] : {_unitary(F)}"
    op = _BINOP[type(F)]
    return f"{_unitary(F.left)} {op} {_unitary(F.right)}"


def print_tptp(problem: TptpProblem) -> str:
    lines = []
    for u in problem.units:
        name = u.name if re.fullmatch(r"[a-z][A-Za-z0-9_]*|[0-9]+", u.name) else _atom(u.name)
        lines.append(f"fof({name}, {u.role}, {print_eform(u.formula)}).")
    return "\n".join(lines) + ("\n" if lines else "")


# -- problems -----------------------------------------------------------------------------

def assemble_context(problem: TptpProblem) -> list:
    """Negated conjecture first, then the remaining units in file order."""
    conj = [u for u in problem.units if u.role == "conjecture"]
    if len(conj) > 1:
        raise MultipleConjectures(f"{len(conj)} conjectures")
    ctx = [Neg(translate_eform(u.formula)) for u in conj]
    for u in problem.units:
        if u.role in AXIOM_ROLES or u.role == "negated_conjecture":
            ctx.append(translate_eform(u.formula))
    return ctx


def split_problem(problem: TptpProblem):
    """``(axiom formulas, conjecture or None)`` as extended formulas; negated
    conjectures count as axioms."""
    axioms, conj = [], None
    for u in problem.units:
        if u.role == "conjecture":
            conj = u.formula
        else:
            axioms.append(u.formula)
    return axioms, conj


def gen_phi(n: int):
    """``![X1..Xn] : (~p1(X1) & ?[Y1]: p1(Y1)) | ... | (~pn(Xn) & ?[Yn]: pn(Yn))``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    disjuncts = [
        EAnd(ENeg(EPred(f"p{i}", (EVar(f"X{i}"),))), EEx(f"Y{i}", EPred(f"p{i}", (EVar(f"Y{i}"),))))
        for i in range(1, n + 1)
    ]
    body = disjuncts[0]
    for d in disjuncts[1:]:
        body = EOr(body, d)
    for i in reversed(range(1, n + 1)):
        body = EAll(f"X{i}", body)
    return body


def phi_problem(n: int) -> TptpProblem:
    """Phi_n as an (unsatisfiable) axiom, so its refutation is the proof."""
    return TptpProblem([TptpUnit(f"phi_{n}", "axiom", gen_phi(n))])
