"""S-expression reader/printer and the canonical text form of terms and formulas.

Terms::

    (bound 0)   (free X)   (fun f t1 ... tn)

Formulas::

    (bot)   (pred P t1 ... tn)   (not F)   (or F G)   (all F)

Atoms are bare tokens; atoms containing whitespace, parentheses, double
quotes, backslashes or ``;`` (or the empty atom) are written as double-quoted
strings with backslash escapes.  ``;`` starts a comment running to end of line.
"""

from __future__ import annotations

import re

from .syntax import All, BOT, Bot, BoundVar, Form, FreeVar, Fun, Neg, Or, Pred, Term

_BARE = re.compile(r'[^\s()";\\]+\Z')


class SexprError(ValueError):
    def __init__(self, message, line=None, col=None):
        where = f" at line {line}, column {col}" if line is not None else ""
        super().__init__(f"{message}{where}")
        self.line = line
        self.col = col


def quote_atom(a: str) -> str:
    if _BARE.match(a):
        return a
    return '"' + a.replace("\\", "\\\\").replace('"', '\\"') + '"'


def dumps(x) -> str:
    """Render nested lists of strings on one line."""
    if isinstance(x, str):
        return quote_atom(x)
    return "(" + " ".join(dumps(y) for y in x) + ")"


def _tokens(text: str):
    i, n = 0, len(text)
    line, line_start = 1, 0
    while i < n:
        c = text[i]
        if c == "\n":
            line += 1
            line_start = i + 1
            i += 1
        elif c.isspace():
            i += 1
        elif c == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif c in "()":
            yield c, line, i - line_start + 1
            i += 1
        elif c == '"':
            start_col = i - line_start + 1
            i += 1
            buf = []
            while True:
                if i >= n:
                    raise SexprError("unterminated string", line, start_col)
                c = text[i]
                if c == "\\":
                    if i + 1 >= n:
                        raise SexprError("dangling escape", line, start_col)
                    buf.append(text[i + 1])
                    i += 2
                elif c == '"':
                    i += 1
                    break
                else:
                    if c == "\n":
                        line += 1
                        line_start = i + 1
                    buf.append(c)
                    i += 1
            yield ("atom", "".join(buf)), line, start_col
        else:
            start = i
            while i < n and not text[i].isspace() and text[i] not in '();"':
                if text[i] == "\\":
                    raise SexprError("backslash outside string", line, i - line_start + 1)
                i += 1
            yield ("atom", text[start:i]), line, start - line_start + 1


def loads_all(text: str) -> list:
    """Parse every top-level expression in ``text``."""
    out: list = []
    stack: list = []
    for tok, line, col in _tokens(text):
        if tok == "(":
            stack.append([])
        elif tok == ")":
            if not stack:
                raise SexprError("unbalanced ')'", line, col)
            done = stack.pop()
            (stack[-1] if stack else out).append(done)
        else:
            (stack[-1] if stack else out).append(tok[1])
    if stack:
        raise SexprError("unbalanced '(' at end of input")
    return out


def loads(text: str):
    items = loads_all(text)
    if len(items) != 1:
        raise SexprError(f"expected exactly one expression, found {len(items)}")
    return items[0]


# -- terms and formulas -------------------------------------------------------

def term_to_sexpr(t: Term):
    if isinstance(t, BoundVar):
        return ["bound", str(t.index)]
    if isinstance(t, FreeVar):
        return ["free", t.name]
    return ["fun", t.symbol, *(term_to_sexpr(a) for a in t.args)]


def form_to_sexpr(f: Form):
    if isinstance(f, Bot):
        return ["bot"]
    if isinstance(f, Pred):
        return ["pred", f.symbol, *(term_to_sexpr(a) for a in f.args)]
    if isinstance(f, Neg):
        return ["not", form_to_sexpr(f.body)]
    if isinstance(f, Or):
        return ["or", form_to_sexpr(f.left), form_to_sexpr(f.right)]
    if isinstance(f, All):
        return ["all", form_to_sexpr(f.body)]
    raise TypeError(f"not a formula: {f!r}")


def _head(x, what):
    if not isinstance(x, list) or not x or not isinstance(x[0], str):
        raise SexprError(f"expected a {what}, got {dumps(x) if x != [] else '()'}")
    return x[0]


def _arity(x, n, what):
    if len(x) != n:
        raise SexprError(f"malformed {what}: {dumps(x)}")


def sexpr_to_term(x) -> Term:
    h = _head(x, "term")
    if h == "bound":
        _arity(x, 2, "bound variable")
        if not isinstance(x[1], str) or not x[1].isdigit():
            raise SexprError(f"bad index in {dumps(x)}")
        return BoundVar(int(x[1]))
    if h == "free":
        _arity(x, 2, "free variable")
        if not isinstance(x[1], str):
            raise SexprError(f"bad variable name in {dumps(x)}")
        return FreeVar(x[1])
    if h == "fun":
        if len(x) < 2 or not isinstance(x[1], str):
            raise SexprError(f"malformed function term: {dumps(x)}")
        return Fun(x[1], tuple(sexpr_to_term(a) for a in x[2:]))
    raise SexprError(f"unknown term constructor {h!r}")


def sexpr_to_form(x) -> Form:
    h = _head(x, "formula")
    if h == "bot":
        _arity(x, 1, "bot")
        return BOT
    if h == "pred":
        if len(x) < 2 or not isinstance(x[1], str):
            raise SexprError(f"malformed predicate: {dumps(x)}")
        return Pred(x[1], tuple(sexpr_to_term(a) for a in x[2:]))
    if h == "not":
        _arity(x, 2, "negation")
        return Neg(sexpr_to_form(x[1]))
    if h == "or":
        _arity(x, 3, "disjunction")
        return Or(sexpr_to_form(x[1]), sexpr_to_form(x[2]))
    if h == "all":
        _arity(x, 2, "quantifier")
        return All(sexpr_to_form(x[1]))
    raise SexprError(f"unknown formula constructor {h!r}")


def show(x) -> str:
    """Canonical one-line text of a term or formula."""
    if isinstance(x, (BoundVar, FreeVar, Fun)):
        return dumps(term_to_sexpr(x))
    return dumps(form_to_sexpr(x))


def read_term(text: str) -> Term:
    return sexpr_to_term(loads(text))


def read_form(text: str) -> Form:
    return sexpr_to_form(loads(text))
