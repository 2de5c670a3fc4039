"""Functions and identities of Z_q, q = 2**kappa, under ADD and XOR."""

from .anf import CanonicalPoly, Monomial, TruthTable
from .expressibility import (
    closure_oracle,
    count_free_algebra,
    decide_algebraic,
    enumerate_free_algebra,
    enumerate_monomials,
)
from .expr import evaluate, render, table_of
from .grammar import parse
from .identities import check_identity, check_identity_nf, parse_identity, verify_ring_axioms
from .synth import synthesize
from .word import Modulus, Word

__all__ = [
    "CanonicalPoly",
    "Modulus",
    "Monomial",
    "TruthTable",
    "Word",
    "check_identity",
    "check_identity_nf",
    "closure_oracle",
    "count_free_algebra",
    "decide_algebraic",
    "enumerate_free_algebra",
    "enumerate_monomials",
    "evaluate",
    "parse",
    "parse_identity",
    "render",
    "synthesize",
    "table_of",
    "verify_ring_axioms",
]
