import pytest

from corpus import certificates
from tabcheck.certificate import CertificateError, parse_certificate, print_certificate
from tabcheck.checker import AlphaNegNeg, AlphaNegOr, BetaOr, Certificate, Leaf, Node, check_proof, unary
from tabcheck.syntax import Fun, Neg, Or, Pred, const

c = const("c")
Pc, Qc = Pred("P", (c,)), Pred("Q", (c,))
EM = Neg(Or(Pc, Neg(Pc)))
EM_CERT = Certificate([EM], {}, "inner",
                      unary(AlphaNegOr(EM), unary(AlphaNegNeg(Neg(Neg(Pc))), Leaf((Pc, Neg(Pc))))))

EM_TEXT = """\
(certificate
  (strategy inner)
  (context (not (or (pred P (fun c)) (not (pred P (fun c))))))
  (substitution)
  (tree (alpha-neg-or (not (or (pred P (fun c)) (not (pred P (fun c))))) (alpha-neg-neg (not (not (pred P (fun c)))) (leaf (pred P (fun c)) (not (pred P (fun c))))))))
"""


class TestFormat:
    def test_canonical_layout(self):
        assert print_certificate(EM_CERT) == EM_TEXT
        assert parse_certificate(EM_TEXT) == EM_CERT

    def test_substitution_sorted(self):
        cert = Certificate([Pc], {"Y": c, "X": Fun("f", (c,))}, "outer", Leaf())
        text = print_certificate(cert)
        assert "(substitution (X (fun f (fun c))) (Y (fun c)))" in text
        assert parse_certificate(text) == cert

    def test_beta_sugar(self):
        text = """(certificate (strategy preinner)
            (context (or (pred P (fun c)) (pred Q (fun c))) (not (pred P (fun c))) (not (pred Q (fun c))))
            (substitution)
            (tree (beta-or (pred P (fun c)) (pred Q (fun c)) (leaf) (leaf))))"""
        cert = parse_certificate(text)
        assert cert.tree == Node(Leaf(), BetaOr(Or(Pc, Qc)), Leaf())
        assert check_proof(cert)
        assert "(beta-or (or " in print_certificate(cert)

    def test_comments_allowed(self):
        assert parse_certificate("; produced by hand\n" + EM_TEXT) == EM_CERT

    @pytest.mark.parametrize("text", [
        "(certificate)",
        "(proof (strategy inner) (context) (substitution) (tree (leaf)))",
        "(certificate (strategy sideways) (context) (substitution) (tree (leaf)))",
        "(certificate (strategy inner) (substitution) (context) (tree (leaf)))",
        "(certificate (strategy inner) (context) (substitution (X (bound 0))) (tree (leaf)))",
        "(certificate (strategy inner) (context) (substitution (X (fun c)) (X (fun d))) (tree (leaf)))",
        "(certificate (strategy inner) (context) (substitution) (tree (leaf (bot))))",
        "(certificate (strategy inner) (context) (substitution) (tree (gamma-all (bot) (leaf))))",
        "(certificate (strategy inner) (context) (substitution) (tree (frobnicate (bot) (leaf))))",
        "(certificate (strategy inner) (context) (substitution) (tree (leaf))",
        "(certificate (strategy inner) (context (wat)) (substitution) (tree (leaf)))",
    ])
    def test_errors(self, text):
        with pytest.raises(CertificateError):
            parse_certificate(text)


class TestRoundTrip:
    def test_corpus(self):
        for cert in certificates():
            text = print_certificate(cert)
            back = parse_certificate(text)
            assert back == cert
            assert print_certificate(back) == text

    def test_deep_tree(self):
        # deeper than the prover's default depth limit
        F = Neg(Neg(Pc))
        tree = Leaf((Pc, Neg(Pc)))
        for _ in range(250):
            tree = unary(AlphaNegNeg(F), tree)
        cert = Certificate([F, Neg(Pc)], {}, "inner", tree)
        assert parse_certificate(print_certificate(cert)) == cert
        assert check_proof(cert)
