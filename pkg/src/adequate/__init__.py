"""Adequate sets: finite sets A containing r such that every partial ring map
respecting 1, + and * inside A must fix r."""

from .adequacy import (Budget, VerifyResult, check_assignment, frobenius_counterexample,
                       verify, verify_bruteforce_ff, verify_symbolic)
from .builders import (build_padic_thm7, build_real_chain, build_real_proof1,
                       build_real_proof2, choose_alpha_beta, transform_proof2)
from .carriers import FiniteFieldCarrier, PadicCarrier, RealCarrier
from .constraints import (AdequateSet, ConstraintSystem, cs_closure, cs_combine_single,
                          cs_count_bound, cs_distinguished_constrained, cs_enumerate,
                          cs_extract, make_set)
from .finfield import FiniteField, ff_build, ff_frobenius
from .padic import PadicNum, hensel_lift, lemma2_witness, padic_roots, separate
from .polyarith import IntPoly, SymPoly, resultant, sturm_count
from .realalg import RealAlg, ra_make, ra_rational, ra_sqrt, real_roots

__version__ = "0.1.0"

__all__ = [
    "AdequateSet", "Budget", "ConstraintSystem", "FiniteField", "FiniteFieldCarrier", "IntPoly",
    "PadicCarrier", "PadicNum", "RealAlg", "RealCarrier", "SymPoly", "VerifyResult",
    "build_padic_thm7", "build_real_chain", "build_real_proof1", "build_real_proof2",
    "check_assignment", "choose_alpha_beta", "cs_closure", "cs_combine_single", "cs_count_bound",
    "cs_distinguished_constrained", "cs_enumerate", "cs_extract", "ff_build", "ff_frobenius",
    "frobenius_counterexample", "hensel_lift", "lemma2_witness", "make_set", "padic_roots",
    "ra_make", "ra_rational", "ra_sqrt", "real_roots", "resultant", "separate", "sturm_count",
    "transform_proof2", "verify", "verify_bruteforce_ff", "verify_symbolic",
]
