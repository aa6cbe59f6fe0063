"""Compare the compiled and pure-Python model-search backends.

The workload is a seeded batch of formulas of the form ``F | ~F``: they are
valid, so the search has to enumerate every model of the signature at the
chosen domain size, which is the worst case for the countermodel finder.
Both backends must agree on every result.

    python benchmarks/bench_kernel.py --count 12 --size 3
"""

import argparse
import random
import sys
import time

from tabcheck import kernel
from tabcheck.randgen import Signature, random_form
from tabcheck.syntax import Neg, Or, fv, signature

SIG = Signature({"a": 0, "f": 1}, {"P": 1, "Q": 0, "R": 2})


def workload(seed: int, count: int, depth: int):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        F = random_form(rng, SIG, depth, free=("X", "Y"))
        out.append(Or(F, Neg(F)))
    return out


def run(backend: str, progs, budget: int):
    results = []
    t0 = time.perf_counter()
    for prog in progs:
        results.append(kernel.search(prog, budget, backend))
    return time.perf_counter() - t0, results


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--count", type=int, default=12, help="number of formulas")
    ap.add_argument("--size", type=int, default=3, help="domain size")
    ap.add_argument("--depth", type=int, default=4, help="formula depth")
    ap.add_argument("--budget", type=int, default=2_000_000, help="max assignments per formula")
    args = ap.parse_args(argv)

    backends = kernel.available_backends()
    if "cython" not in backends:
        print("compiled backend not built; reinstall without TABCHECK_NO_EXT", file=sys.stderr)
        return 1
    forms = workload(args.seed, args.count, args.depth)
    progs = []
    for F in forms:
        funs, preds = signature(F)
        progs.append(kernel.compile_form(F, funs, preds, fv(F), args.size))
    assignments = sum(min(args.budget, _space(p)) for p in progs)
    print(f"{len(progs)} formulas, domain size {args.size}, {assignments:,} assignments in total")

    times = {}
    outputs = {}
    for name in ("python", "cython"):
        times[name], outputs[name] = run(name, progs, args.budget)
        rate = assignments / times[name] if times[name] else float("inf")
        print(f"{name:7s} {times[name]:9.3f} s  {rate:14,.0f} assignments/s")
    if outputs["python"] != outputs["cython"]:
        print("MISMATCH between backends", file=sys.stderr)
        return 1
    print(f"speedup {times['python'] / times['cython']:.1f}x (results identical)")
    return 0


def _space(prog) -> int:
    total = 1
    for r in prog.radix:
        total *= r
    return total


if __name__ == "__main__":
    sys.exit(main())
