"""Exact apolarity, real Waring ranks and typical-rank witnesses for binary forms."""

__version__ = "0.1.0"

from .apolarity import (apolar_generators, apolar_graded_piece, decompose, decompose_numeric,
                        decompose_rational, form_from_apolar, is_generic_degrees)
from .forms import BinaryForm, apply_apolar, parse_form
from .pencil import pencil_contains_hyperbolic, pencil_contains_real_rooted
from .rank import (Rigor, SearchBudget, complex_rank, perturbation_stability_test,
                   real_rank_search, typicality_certificate)
from .roots import count_distinct_real_roots, is_hyperbolic, resultant
from .verify import VerificationError, verify_document
from .witness import atlas, induction_step, witness

__all__ = [
    "BinaryForm", "Rigor", "SearchBudget", "VerificationError", "apolar_generators",
    "apolar_graded_piece", "apply_apolar", "atlas", "complex_rank", "count_distinct_real_roots",
    "decompose", "decompose_numeric", "decompose_rational", "form_from_apolar",
    "induction_step", "is_generic_degrees", "is_hyperbolic", "parse_form",
    "pencil_contains_hyperbolic", "pencil_contains_real_rooted", "perturbation_stability_test",
    "real_rank_search", "resultant", "typicality_certificate", "verify_document", "witness",
]
