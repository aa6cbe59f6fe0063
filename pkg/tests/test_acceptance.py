"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``; the lines are also
collected in an "acceptance criteria" section of the terminal summary.
"""

import itertools
import random
import time
import timeit

import pytest

from corpus import corpus
from tabcheck.certificate import parse_certificate, print_certificate
from tabcheck.checker import Leaf, certificate_sequence, check_proof, iter_nodes
from tabcheck.cli import main
from tabcheck.extended import (
    eform_depth, eform_symbols, extended_env, interpret_eform, interpret_eterm, translate_eform,
    translate_eform_aux, translate_eterm,
)
from tabcheck.mutate import MUTATIONS, mutation_sites
from tabcheck.prover import SearchConfig, search
from tabcheck.randgen import (
    DEFAULT_SIG, ESIG, random_eform, random_eterm, random_form, random_model, random_skolem_candidate,
    random_term,
)
from tabcheck.semantics import FreeEnv, interpret_form, interpret_term, valid_under_upto
from tabcheck.skolem import OUTER, INNER, PREINNER, check_requirement4
from tabcheck.syntax import FreeVar, open_var, subst
from tabcheck.tableau import check_expansion_sequence, is_tableau_closed, single_node
from tabcheck.tptp import TptpProblem, TptpUnit, assemble_context, parse_tptp, phi_problem, print_tptp

STRATEGIES = (OUTER, INNER, PREINNER)


@pytest.fixture
def report(acceptance, capsys):
    def record(k, ok, detail):
        acceptance[k] = (ok, detail)
        with capsys.disabled():
            print(f"\ncriterion {k}: {'PASS' if ok else 'FAIL'} - {detail}")
        assert ok, detail
    return record


def _accepted():
    return [e for e in corpus() if e.certificate is not None and check_proof(e.certificate).status]


def test_criterion_1_soundness_oracle(report):
    t0 = time.perf_counter()
    entries = corpus()
    accepted, countermodels, sig_ok = 0, [], True
    for e in entries:
        forms = [*e.problem.axioms, e.problem.conjecture]
        funs, preds = {}, {}
        for F in forms:
            f, p = eform_symbols(F)
            funs.update(f)
            preds.update(p)
        sig_ok &= len(preds) <= 3 and len(funs) <= 2 and max(map(eform_depth, forms)) <= 5
        if e.certificate is None or not check_proof(e.certificate).status:
            continue
        accepted += 1
        gamma = [translate_eform(A) for A in e.problem.axioms]
        verdict = valid_under_upto(gamma, translate_eform(e.problem.conjecture), 3)
        if not verdict.is_valid:
            countermodels.append(e.problem.name)
    elapsed = time.perf_counter() - t0
    ok = accepted >= 200 and not countermodels and sig_ok and elapsed < 300
    report(1, ok, f"{accepted} accepted certificates, {len(countermodels)} countermodels at bound 3, "
                  f"signature limits {'respected' if sig_ok else 'VIOLATED'}, {elapsed:.1f}s")


def test_criterion_2_checker_calculus_equivalence(report):
    failures = []
    entries = _accepted()
    for e in entries:
        cert = e.certificate
        out = check_proof(cert)
        seq = certificate_sequence(cert)
        if seq is None:
            failures.append((e.problem.name, "no sequence"))
            continue
        checks = {
            "head": seq[0] == single_node(cert.context),
            "sequence": check_expansion_sequence(cert.strategy, cert.context, cert.sigma, seq).ok,
            "closed": is_tableau_closed(seq[-1], cert.sigma),
            "record": seq[-1].symbols == out.symbs,
        }
        failures += [(e.problem.name, k) for k, v in checks.items() if not v]
    report(2, not failures and len(entries) >= 200,
           f"{len(entries)} certificates replayed, {len(failures)} failures {failures[:3] if failures else ''}".strip())


def _subsets(funcs, rng):
    funcs = sorted(funcs)
    if len(funcs) <= 6:
        return [set(c) for r in range(len(funcs) + 1) for c in itertools.combinations(funcs, r)]
    return [set()] + [{f for f in funcs if rng.random() < 0.5} for _ in range(32)]


def test_criterion_3_skolem_requirements(report):
    rng = random.Random(2024)
    details, failures = [], 0
    for strat in STRATEGIES:
        valid = 0
        for _ in range(1000):
            c = random_skolem_candidate(rng, strat)
            if not strat.is_sko(c.term, c.target, c.record, c.branch_fvs, c.funcs):
                continue
            valid += 1
            t = c.term
            ok = t == type(t)(strat.symbol(t), tuple(strat.args(t)))
            ok &= all(isinstance(a, FreeVar) for a in strat.args(t))
            ok &= all(strat.is_sko(t, c.target, c.record, c.branch_fvs, s) for s in _subsets(c.funcs, rng))
            failures += not ok
        witnessed = 0
        for _ in range(100):
            c = random_skolem_candidate(rng, strat, valid_bias=1.0)
            n = rng.randint(1, 3)
            M = random_model(rng, n, DEFAULT_SIG.funs, DEFAULT_SIG.preds)
            mu = FreeEnv({x: rng.randrange(n) for x in ("X", "Y", "Z", "W")})
            tests = [c.target, random_form(rng, depth=3), random_form(rng, depth=3)]
            try:
                check_requirement4(strat, M, c.term, c.target.body.body, mu, record=c.record,
                                   branch_fvs=c.branch_fvs, funcs=c.funcs, tests=tests)
                witnessed += 1
            except Exception:  # noqa: BLE001 - any failure counts against the criterion
                failures += 1
        details.append(f"{strat.name}: 1000 candidates ({valid} valid), requirement 4 {witnessed}/100")
    report(3, failures == 0, f"{failures} failures; " + "; ".join(details))


def _check_commutations(rng):
    fails = dict.fromkeys(("open/bound-env", "subst/free-env", "term translation", "formula translation"), 0)
    funs, preds = DEFAULT_SIG.funs, DEFAULT_SIG.preds
    for _ in range(1000):
        n = rng.randint(1, 3)
        M = random_model(rng, n, funs, preds)
        mu = FreeEnv({x: rng.randrange(n) for x in ("X", "Y", "Z")})
        rho = [rng.randrange(n) for _ in range(rng.randint(0, 2))]
        body = random_form(rng, depth=4, nbound=1)
        u = random_term(rng, DEFAULT_SIG, 2, 0)
        d = interpret_term(M, rho, mu, u)
        fails["open/bound-env"] += interpret_form(M, rho, mu, open_var(body, 0, u)) != \
            interpret_form(M, [d, *rho], mu, body)
    for _ in range(1000):
        n = rng.randint(1, 3)
        M = random_model(rng, n, funs, preds)
        mu = FreeEnv({x: rng.randrange(n) for x in ("X", "Y", "Z")})
        F = random_form(rng, depth=4)
        sigma = {x: random_term(rng, DEFAULT_SIG, 2, 0) for x in ("X", "Y", "Z") if rng.random() < 0.6}
        shifted = FreeEnv({x: interpret_term(M, [], mu, sigma.get(x, FreeVar(x))) for x in ("X", "Y", "Z")})
        fails["subst/free-env"] += interpret_form(M, [], mu, subst(F, sigma)) != interpret_form(M, [], shifted, F)
    for kind in ("term translation", "formula translation"):
        for _ in range(1000):
            n = rng.randint(1, 3)
            M = random_model(rng, n, ESIG.funs, ESIG.preds)
            k = rng.randint(0, 3)
            bvs = [rng.choice("XYZW") for _ in range(k)]
            rho = [rng.randrange(n) for _ in range(k)]
            sigma = FreeEnv({x: rng.randrange(n) for x in ("U", "V")})
            env = extended_env(bvs, rho, sigma)
            if kind == "term translation":
                t = random_eterm(rng, ESIG, bvs, 3)
                fails[kind] += interpret_term(M, rho, sigma, translate_eterm(bvs, t)) != interpret_eterm(M, env, t)
            else:
                F = random_eform(rng, ESIG, 4, tuple(bvs))
                fails[kind] += interpret_form(M, rho, sigma, translate_eform_aux(bvs, F)) != \
                    interpret_eform(M, env, F)
    return fails


def test_criterion_4_commutation_lemmas(report):
    fails = _check_commutations(random.Random(77))
    report(4, not any(fails.values()),
           "1000 instances each; failures " + ", ".join(f"{k}={v}" for k, v in fails.items()))


def _check_time(cert, repeats=5):
    timer = timeit.Timer(lambda: check_proof(cert))
    number, _ = timer.autorange()
    return min(timer.repeat(repeats, number)) / number


def test_criterion_5_phi_scaling(report):
    inner_cfg = SearchConfig("inner", gamma_limit=3, node_budget=200_000)
    rows, ok = [], True
    times, branches = {}, {}
    for n in range(1, 7):
        ctx = assemble_context(phi_problem(n))
        t0 = time.perf_counter()
        r = search(ctx, inner_cfg)
        wall = time.perf_counter() - t0
        proved = r.status == "proved" and check_proof(r.certificate).status and wall <= 60
        ok &= proved
        if proved:
            times[n] = _check_time(r.certificate)
            branches[n] = r.stats.branches
        rows.append(f"n={n} {'proved' if proved else r.status} in {wall:.3f}s")
    ratios = {n: times[n] / times[n - 1] for n in range(3, 7) if n in times and n - 1 in times}
    ok &= len(ratios) == 4 and all(v <= 4 for v in ratios.values())
    outer_cfg = SearchConfig("outer", gamma_limit=3, node_budget=20_000)
    compared = []
    for n in range(1, 7):
        r = search(assemble_context(phi_problem(n)), outer_cfg)
        if r.status == "proved" and n in branches:
            compared.append(n)
            ok &= branches[n] <= r.stats.branches
    ratio_text = ", ".join(f"{n}:{v:.2f}" for n, v in ratios.items())
    report(5, ok, f"inner {'; '.join(rows)}; check-time ratios {ratio_text}; "
                  f"inner<=outer branches on n={compared}")


def test_criterion_6_mutation_rejection(report):
    certs = [e.certificate for e in _accepted()]
    summary, ok = [], True
    for name, mutate in MUTATIONS.items():
        tried = rejected = 0
        for cert in certs:
            sites = mutation_sites(name, cert)
            if not sites:
                continue
            path = sites[0]
            node = dict(iter_nodes(cert.tree))[path]
            rule = "leaf" if isinstance(node, Leaf) else node.rule.name
            out = check_proof(mutate(cert, path))
            tag = f"[{''.join(path) or 'root'}] {rule}"
            tried += 1
            rejected += (not out.status) and bool(out.messages) and out.messages[0].startswith(tag)
            if tried == 50:
                break
        ok &= tried == 50 and rejected == 50
        summary.append(f"{name} {rejected}/{tried}")
    report(6, ok, "rejected with rule-identifying diagnostics: " + ", ".join(summary))


def _cli_contract(tmp_path):
    good = next(e.certificate for e in _accepted())
    from tabcheck.checker import Certificate
    bad = Certificate(good.context, good.sigma, good.strategy, Leaf())
    files = {
        "good.cert": print_certificate(good),
        "bad.cert": print_certificate(bad),
        "junk.cert": "(certificate (strategy inner)",
        "thm.p": "fof(a, axiom, p(c)). fof(g, conjecture, ?[X]: p(X)).",
        "sat.p": "fof(g, conjecture, p(c)).",
        "eq.p": "fof(a, axiom, c = d).",
        "valid.sexp": "(or (pred P (fun c)) (not (pred P (fun c))))",
        "invalid.sexp": "(pred P (fun c))",
    }
    for name, text in files.items():
        (tmp_path / name).write_text(text)
    f = lambda name: str(tmp_path / name)  # noqa: E731
    cases = [
        (["check", f("good.cert")], 0), (["check", f("bad.cert")], 1), (["check", f("junk.cert")], 2),
        (["check", f("missing.cert")], 2),
        (["validate-model", f("valid.sexp")], 0), (["validate-model", f("invalid.sexp")], 1),
        (["validate-model", f("junk.cert")], 2),
        (["gen-phi", "2", "-o", f("phi2.p")], 0), (["gen-phi", "0"], 2),
        (["parse", f("thm.p")], 0), (["parse", "--dump", f("thm.p")], 0), (["parse", f("eq.p")], 2),
        (["prove", f("thm.p"), "-o", f("thm.cert")], 0), (["prove", f("sat.p")], 1), (["prove", f("eq.p")], 2),
        (["stats", f("good.cert")], 0), (["stats", f("bad.cert")], 1), (["stats", f("junk.cert")], 2),
    ]
    wrong = []
    for argv, expected in cases:
        code = main(argv)
        if code != expected:
            wrong.append((argv[0], expected, code))
    try:
        main(["no-such-command"])
        wrong.append(("usage", 2, 0))
    except SystemExit as e:
        if e.code != 2:
            wrong.append(("usage", 2, e.code))
    return len(cases) + 1, wrong


def test_criterion_7_format_fidelity(report, tmp_path, capsys):
    entries = corpus()
    tptp_fail = sum(parse_tptp(print_tptp(e.tptp)) != e.tptp for e in entries)
    rng = random.Random(5)
    extra = TptpProblem([TptpUnit(f"u{i}", "axiom", random_eform(rng, ESIG, 5)) for i in range(500)])
    tptp_fail += parse_tptp(print_tptp(extra)) != extra
    phis = [phi_problem(n) for n in range(1, 7)]
    tptp_fail += sum(parse_tptp(print_tptp(p)) != p for p in phis)
    certs = [e.certificate for e in entries if e.certificate is not None]
    cert_fail = 0
    for cert in certs:
        text = print_certificate(cert)
        back = parse_certificate(text)
        cert_fail += back != cert or print_certificate(back) != text
    ncases, wrong = _cli_contract(tmp_path)
    capsys.readouterr()
    ok = tptp_fail == 0 and cert_fail == 0 and not wrong
    nprob = len(entries) + 1 + len(phis)
    report(7, ok, f"TPTP round-trip {nprob} problems ({tptp_fail} failures), "
                  f"certificate round-trip {len(certs)} ({cert_fail} failures), "
                  f"CLI exit codes {ncases - len(wrong)}/{ncases} {wrong if wrong else ''}".strip())
