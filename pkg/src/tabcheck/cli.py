"""Command-line interface.

Exit codes: 0 success (certificate accepted, proof found, formula valid up to
the bound); 1 negative answer (certificate rejected, no proof found,
countermodel found); 2 unreadable input (parse errors, unsupported TPTP
features, missing files).
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .certificate import CertificateError, parse_certificate, print_certificate
from .checker import Certificate, check_proof, format_diagnostics
from .extended import translate_eform
from .prover import ProverError, RejectedCertificate, SearchConfig, search, stats
from .semantics import DEFAULT_BUDGET, BudgetExceeded, DanglingIndex, is_valid_upto, valid_under_upto
from .sexpr import SexprError, dumps, form_to_sexpr, read_form
from .skolem import STRATEGIES
from .syntax import BOT
from .tptp import TptpError, TptpProblem, assemble_context, parse_tptp, phi_problem, print_tptp, split_problem

EXIT_OK, EXIT_NO, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None


def _write(path, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _load_problem(path: str) -> TptpProblem:
    try:
        return parse_tptp(_read(path))
    except TptpError as e:
        raise InputError(f"{path}: {e}") from None


def _load_certificate(path: str) -> Certificate:
    try:
        return parse_certificate(_read(path))
    except CertificateError as e:
        raise InputError(f"{path}: {e}") from None


def cmd_check(args) -> int:
    cert = _load_certificate(args.file)
    if args.skolem:
        cert = Certificate(cert.context, cert.sigma, args.skolem, cert.tree)
    outcome = check_proof(cert)
    if outcome.status:
        print("accepted")
        return EXIT_OK
    sys.stderr.write(format_diagnostics(outcome))
    print("rejected")
    return EXIT_NO


def cmd_validate_model(args) -> int:
    text = _read(args.file)
    try:
        if args.tptp:
            axioms, conj = split_problem(parse_tptp(text))
            gamma = [translate_eform(F) for F in axioms]
            goal = translate_eform(conj) if conj is not None else None
        else:
            goal = read_form(text)
    except (TptpError, SexprError, ValueError) as e:
        raise InputError(f"{args.file}: {e}") from None
    try:
        if args.tptp:
            if goal is None:
                goal = BOT  # no conjecture: look for a model of the axioms
            verdict = valid_under_upto(gamma, goal, args.max_size, budget=args.budget)
        else:
            verdict = is_valid_upto(goal, args.max_size, budget=args.budget)
    except BudgetExceeded as e:
        print(f"unknown: {e}", file=sys.stderr)
        return EXIT_NO
    except DanglingIndex as e:
        raise InputError(f"{args.file}: {e}") from None
    print(verdict.describe())
    return EXIT_OK if verdict.is_valid else EXIT_NO


def cmd_gen_phi(args) -> int:
    if args.n < 1:
        raise InputError("N must be at least 1")
    problem = phi_problem(args.n)
    _write(args.output, print_tptp(problem))
    return EXIT_OK


def cmd_parse(args) -> int:
    problem = _load_problem(args.file)
    if args.dump:
        for F in assemble_context(problem):
            print(dumps(form_to_sexpr(F)))
    elif args.tptp:
        sys.stdout.write(print_tptp(problem))
    else:
        roles = {}
        for u in problem.units:
            roles[u.role] = roles.get(u.role, 0) + 1
        summary = ", ".join(f"{n} {r}" for r, n in sorted(roles.items()))
        print(f"{len(problem.units)} units" + (f" ({summary})" if summary else ""))
    return EXIT_OK


def cmd_prove(args) -> int:
    problem = _load_problem(args.file)
    try:
        gamma = assemble_context(problem)
        cfg = SearchConfig(args.skolem, args.gamma_limit, args.depth_limit, args.budget)
        result = search(gamma, cfg)
    except (TptpError, ProverError) as e:
        raise InputError(str(e)) from None
    if result.status != "proved":
        print(f"no proof ({result.status}, {result.nodes} nodes, gamma limit {result.gamma_limit})",
              file=sys.stderr)
        return EXIT_NO
    _write(args.output, print_certificate(result.certificate))
    st = result.stats
    print(f"proved: {st.branches} branches, {st.gamma_instantiations} gamma steps, "
          f"{result.nodes} nodes", file=sys.stderr)
    return EXIT_OK


def cmd_stats(args) -> int:
    cert = _load_certificate(args.file)
    try:
        st = stats(cert)
    except RejectedCertificate as e:
        print(f"rejected: {e}", file=sys.stderr)
        return EXIT_NO
    print(f"strategy {cert.strategy.name}")
    print(f"branches {st.branches}")
    print(f"gamma-instantiations {st.gamma_instantiations}")
    for name, n in st.rule_counts.items():
        print(f"rule {name} {n}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tabcheck", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    skolems = sorted(STRATEGIES)

    p = sub.add_parser("check", help="check a certificate")
    p.add_argument("file")
    p.add_argument("--skolem", choices=skolems, help="override the certificate's strategy")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("validate-model", help="search for a finite countermodel")
    p.add_argument("file", help="a formula as an S-expression (or a TPTP problem with --tptp)")
    p.add_argument("--max-size", type=int, default=3)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max assignments enumerated in total")
    p.add_argument("--tptp", action="store_true", help="read a TPTP problem and test its entailment")
    p.set_defaults(func=cmd_validate_model)

    p = sub.add_parser("gen-phi", help="write the Phi_n problem as TPTP")
    p.add_argument("n", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen_phi)

    p = sub.add_parser("parse", help="parse a TPTP problem")
    p.add_argument("file")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--dump", action="store_true", help="print the translated context")
    group.add_argument("--tptp", action="store_true", help="reprint the problem as TPTP")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("prove", help="search for a refutation and write a certificate")
    p.add_argument("file")
    p.add_argument("--skolem", choices=skolems, default="inner")
    p.add_argument("--gamma-limit", type=int, default=3)
    p.add_argument("--depth-limit", type=int, default=200)
    p.add_argument("--budget", type=int, default=200_000, help="max search nodes")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("stats", help="branch and rule counts of an accepted certificate")
    p.add_argument("file")
    p.set_defaults(func=cmd_stats)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
