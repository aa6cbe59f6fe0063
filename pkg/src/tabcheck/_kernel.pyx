# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled backend of the model-search kernel (twin of ``_kernel_py``)."""

import numpy as np

cdef enum:
    T_BOUND = 0
    T_FREE = 1
    T_FUN = 2
    F_BOT = 3
    F_PRED = 4
    F_NEG = 5
    F_OR = 6
    F_ALL = 7


cdef class _Machine:
    cdef long long[::1] kind, a, b, c, args, vals, rho
    cdef long long n

    def __init__(self, kind, a, b, c, args, vals, long long n, long long maxdepth):
        self.kind = np.ascontiguousarray(kind, dtype=np.int64)
        self.a = np.ascontiguousarray(a, dtype=np.int64)
        self.b = np.ascontiguousarray(b, dtype=np.int64)
        self.c = np.ascontiguousarray(c, dtype=np.int64)
        self.args = np.ascontiguousarray(args, dtype=np.int64) if len(args) else np.zeros(1, dtype=np.int64)
        self.vals = vals
        self.rho = np.zeros(maxdepth + 1, dtype=np.int64)
        self.n = n

    cdef long long term(self, long long i, long long depth):
        cdef long long k = self.kind[i]
        cdef long long idx = 0
        cdef long long j, end
        if k == T_BOUND:
            return self.rho[depth - 1 - self.a[i]]
        if k == T_FREE:
            return self.vals[self.a[i]]
        j = self.b[i]
        end = j + self.c[i]
        while j < end:
            idx = idx * self.n + self.term(self.args[j], depth)
            j += 1
        return self.vals[self.a[i] + idx]

    cdef bint form(self, long long i, long long depth):
        cdef long long k, idx, j, end, d
        cdef bint neg = False
        while True:
            k = self.kind[i]
            if k == F_NEG:
                neg = not neg
                i = self.a[i]
                continue
            if k == F_PRED:
                idx = 0
                j = self.b[i]
                end = j + self.c[i]
                while j < end:
                    idx = idx * self.n + self.term(self.args[j], depth)
                    j += 1
                return (self.vals[self.a[i] + idx] != 0) != neg
            if k == F_OR:
                if self.form(self.a[i], depth):
                    return not neg
                i = self.b[i]
                continue
            if k == F_ALL:
                d = 0
                while d < self.n:
                    self.rho[depth] = d
                    if not self.form(self.a[i], depth + 1):
                        return neg
                    d += 1
                return not neg
            return neg


def _max_depth(kind, a, b, root):
    # nesting depth of F_ALL reachable from root
    best = 0
    stack = [(root, 0)]
    while stack:
        i, d = stack.pop()
        k = kind[i]
        if k == F_ALL:
            stack.append((a[i], d + 1))
            if d + 1 > best:
                best = d + 1
        elif k == F_NEG:
            stack.append((a[i], d))
        elif k == F_OR:
            stack.append((a[i], d))
            stack.append((b[i], d))
    return best


def evaluate(kind, a, b, c, args, long long root, vals, long long n):
    cdef long long[::1] v = np.array(list(vals) or [0], dtype=np.int64)
    cdef _Machine m = _Machine(kind, a, b, c, args, v, n, _max_depth(kind, a, b, root))
    return bool(m.form(root, 0))


def search(kind, a, b, c, args, long long root, radix, long long n, long long budget):
    cdef long long ncells = len(radix)
    cdef long long[::1] rad = np.array(list(radix) or [1], dtype=np.int64)
    arr = np.zeros(max(ncells, 1), dtype=np.int64)
    cdef long long[::1] vals = arr
    cdef _Machine m = _Machine(kind, a, b, c, args, vals, n, _max_depth(kind, a, b, root))
    cdef long long count = 0
    cdef long long k
    while True:
        if count >= budget:
            return 2, count, [int(x) for x in arr[:ncells]]
        count += 1
        if not m.form(root, 0):
            return 1, count, [int(x) for x in arr[:ncells]]
        k = ncells - 1
        while k >= 0:
            vals[k] += 1
            if vals[k] < rad[k]:
                break
            vals[k] = 0
            k -= 1
        if k < 0:
            return 0, count, [int(x) for x in arr[:ncells]]
