"""Free-variable tableau certificates: syntax, finite-model semantics, Skolemization
strategies, the tableau calculus, a certificate checker, a TPTP front end and a
small certificate-producing prover."""

__version__ = "0.1.0"

from .checker import Certificate, CheckOutcome, check_proof, check_proof_aux, ruletree_to_sequence
from .prover import SearchConfig, prove, stats, unify
from .semantics import FiniteModel, FreeEnv, is_valid_upto, valid_under_upto
from .skolem import INNER, OUTER, PREINNER, get_strategy
from .syntax import All, Bot, BoundVar, FreeVar, Fun, Neg, Or, Pred

__all__ = [
    "All", "Bot", "BoundVar", "Certificate", "CheckOutcome", "FiniteModel", "FreeEnv", "FreeVar",
    "Fun", "INNER", "Neg", "OUTER", "Or", "PREINNER", "Pred", "SearchConfig", "check_proof",
    "check_proof_aux", "get_strategy", "is_valid_upto", "prove", "ruletree_to_sequence", "stats",
    "unify", "valid_under_upto",
]
