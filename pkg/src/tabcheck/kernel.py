"""Flat-program compilation of formulas and the countermodel-search kernel.

A formula is compiled, for a fixed domain size ``n``, into parallel integer
arrays (``kind``, ``a``, ``b``, ``c``) plus an argument-index array.  Every
interpretation entry of the model (one cell per function-table entry,
predicate-table entry and free variable) lives in a single assignment vector;
enumerating models is then a mixed-radix odometer over that vector.

Two interchangeable backends evaluate the program: a Cython extension
(``_kernel``) and a pure-Python fallback (``_kernel_py``).  The compiled one
is preferred at import unless ``TABCHECK_BACKEND=python`` is set.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from . import _kernel_py
from .syntax import All, Bot, BoundVar, FreeVar, Fun, Neg, Or, Pred

T_BOUND, T_FREE, T_FUN, F_BOT, F_PRED, F_NEG, F_OR, F_ALL = range(8)

_BACKENDS = {"python": _kernel_py}
try:
    from . import _kernel as _kernel_c
except ImportError:  # extension not built
    _kernel_c = None
else:
    _BACKENDS["cython"] = _kernel_c

if os.environ.get("TABCHECK_BACKEND", "").lower() == "python" or _kernel_c is None:
    BACKEND = "python"
else:
    BACKEND = "cython"


def available_backends() -> list:
    return sorted(_BACKENDS)


def use_backend(name: str) -> str:
    """Switch the active backend; returns the previous one."""
    global BACKEND
    if name not in _BACKENDS:
        raise ValueError(f"backend {name!r} unavailable (have {available_backends()})")
    prev, BACKEND = BACKEND, name
    return prev


@dataclass(frozen=True)
class Cell:
    kind: str  # "fun", "pred" or "free"
    symbol: str
    arity: int
    offset: int
    size: int


@dataclass(frozen=True)
class Program:
    n: int
    kind: list
    a: list
    b: list
    c: list
    args: list
    root: int
    cells: tuple  # Cell blocks in enumeration order
    radix: list

    @property
    def ncells(self) -> int:
        return len(self.radix)


def layout(funs: dict, preds: dict, free_names, n: int):
    """Cell blocks for a signature: functions, then predicates, then free variables,
    each group sorted by symbol name."""
    cells = []
    radix: list = []
    offset = 0
    for sym in sorted(funs):
        size = n ** funs[sym]
        cells.append(Cell("fun", sym, funs[sym], offset, size))
        radix.extend([n] * size)
        offset += size
    for sym in sorted(preds):
        size = n ** preds[sym]
        cells.append(Cell("pred", sym, preds[sym], offset, size))
        radix.extend([2] * size)
        offset += size
    for name in sorted(free_names):
        cells.append(Cell("free", name, 0, offset, 1))
        radix.append(n)
        offset += 1
    return tuple(cells), radix


def compile_form(f, funs: dict, preds: dict, free_names, n: int) -> Program:
    cells, radix = layout(funs, preds, free_names, n)
    where = {(c.kind, c.symbol): c.offset for c in cells}
    kind: list = []
    a: list = []
    b: list = []
    c: list = []
    args: list = []

    def node(k, x=0, y=0, z=0):
        kind.append(k)
        a.append(x)
        b.append(y)
        c.append(z)
        return len(kind) - 1

    def term(t):
        if isinstance(t, BoundVar):
            return node(T_BOUND, t.index)
        if isinstance(t, FreeVar):
            return node(T_FREE, where[("free", t.name)])
        kids = [term(x) for x in t.args]
        start = len(args)
        args.extend(kids)
        return node(T_FUN, where[("fun", t.symbol)], start, len(kids))

    def form(g):
        if isinstance(g, Bot):
            return node(F_BOT)
        if isinstance(g, Pred):
            kids = [term(x) for x in g.args]
            start = len(args)
            args.extend(kids)
            return node(F_PRED, where[("pred", g.symbol)], start, len(kids))
        if isinstance(g, Neg):
            return node(F_NEG, form(g.body))
        if isinstance(g, Or):
            left = form(g.left)
            return node(F_OR, left, form(g.right))
        if isinstance(g, All):
            return node(F_ALL, form(g.body))
        raise TypeError(f"not a formula: {g!r}")

    root = form(f)
    return Program(n, kind, a, b, c, args, root, cells, radix)


def search(prog: Program, budget: int, backend: str | None = None):
    """First falsifying assignment in enumeration order: ``(status, count, vals)``."""
    impl = _BACKENDS[backend or BACKEND]
    return impl.search(prog.kind, prog.a, prog.b, prog.c, prog.args, prog.root,
                       prog.radix, prog.n, budget)


def evaluate(prog: Program, vals, backend: str | None = None) -> bool:
    impl = _BACKENDS[backend or BACKEND]
    return bool(impl.evaluate(prog.kind, prog.a, prog.b, prog.c, prog.args, prog.root,
                              vals, prog.n))
