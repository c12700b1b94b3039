"""Checkers for LKID and cyclic proofs of inductive definitions, and a decision
procedure for the counter-model M that separates the two systems."""
from .bijections import PartialBijection, RaySet, is_dyadic, measure
from .cyclic import brute_force_gtc, build_trace_graph, check_cyclic_proof, check_gtc
from .elements import ZERO_M, ZERO_Z, MElement
from .lkid import (PHI_LE, PHI_N, InductionAnnotation, InductiveSystem, Verdict,
                   check_lkid_proof, gen_induction_obligations, system_for)
from .qe import RelEnv, decide_sentence, definable_set, eliminate_one, translate
from .syntax import parse_formula, parse_proof, print_formula, print_proof

__version__ = "0.1.0"

__all__ = [
    "PartialBijection", "RaySet", "is_dyadic", "measure", "brute_force_gtc", "build_trace_graph",
    "check_cyclic_proof", "check_gtc", "ZERO_M", "ZERO_Z", "MElement", "PHI_LE", "PHI_N",
    "InductionAnnotation", "InductiveSystem", "Verdict", "check_lkid_proof",
    "gen_induction_obligations", "system_for", "RelEnv", "decide_sentence", "definable_set",
    "eliminate_one", "translate", "parse_formula", "parse_proof", "print_formula", "print_proof",
]
