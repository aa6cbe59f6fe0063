"""Pure-Python backend of the model-search kernel.

Mirrors ``_kernel.pyx`` exactly; see :mod:`tabcheck.kernel` for the program
encoding.  Used when the compiled extension is unavailable.
"""

T_BOUND, T_FREE, T_FUN, F_BOT, F_PRED, F_NEG, F_OR, F_ALL = range(8)


def _machine(kind, a, b, c, args, vals, n):
    kind = list(kind)
    a = list(a)
    b = list(b)
    c = list(c)
    args = list(args)

    def term(i, rho):
        k = kind[i]
        if k == T_BOUND:
            return rho[-1 - a[i]]
        if k == T_FREE:
            return vals[a[i]]
        idx = 0
        for j in range(b[i], b[i] + c[i]):
            idx = idx * n + term(args[j], rho)
        return vals[a[i] + idx]

    def form(i, rho):
        k = kind[i]
        if k == F_PRED:
            idx = 0
            for j in range(b[i], b[i] + c[i]):
                idx = idx * n + term(args[j], rho)
            return vals[a[i] + idx] != 0
        if k == F_NEG:
            return not form(a[i], rho)
        if k == F_OR:
            return form(a[i], rho) or form(b[i], rho)
        if k == F_ALL:
            child = a[i]
            for d in range(n):
                rho.append(d)
                ok = form(child, rho)
                rho.pop()
                if not ok:
                    return False
            return True
        return False

    return form


def evaluate(kind, a, b, c, args, root, vals, n):
    """Truth value of the program at ``root`` under one cell assignment."""
    vals = list(vals)
    return _machine(kind, a, b, c, args, vals, n)(root, [])


def search(kind, a, b, c, args, root, radix, n, budget):
    """Enumerate cell assignments in lexicographic order (last cell fastest).

    Returns ``(status, count, vals)``: status 0 = no falsifying assignment,
    1 = ``vals`` falsifies the formula, 2 = budget exhausted.
    """
    radix = list(radix)
    ncells = len(radix)
    vals = [0] * ncells
    form = _machine(kind, a, b, c, args, vals, n)
    count = 0
    while True:
        if count >= budget:
            return 2, count, vals
        count += 1
        if not form(root, []):
            return 1, count, vals
        k = ncells - 1
        while k >= 0:
            vals[k] += 1
            if vals[k] < radix[k]:
                break
            vals[k] = 0
            k -= 1
        if k < 0:
            return 0, count, vals
