"""Numerics for rational noncommutative tori, vector theta functions and Gauss sums."""
from .modarith import CoprimePair, crt_join, crt_split, coprime_pairs
from .gauss import gauss_sum, check_multiplicativity
from .nctorus import TorusRep, clock_shift_rep, verify_rep, equivalent, dual_pair
from .thetafun import theta_eval, heat_residual
from .sections import SectionExpr
from .bundle import Bundle
from .matsushima import VectorThetaBasis, build_vector_thetas, hat_matrices, fmn_star
from .oscillator import landau_level
from .deltamodel import build_operator_family, verify_tensor_identity
from .suite import run_suite

__version__ = "0.1.0"

__all__ = [
    "CoprimePair", "crt_join", "crt_split", "coprime_pairs", "gauss_sum",
    "check_multiplicativity", "TorusRep", "clock_shift_rep", "verify_rep", "equivalent",
    "dual_pair", "theta_eval", "heat_residual", "SectionExpr", "Bundle",
    "VectorThetaBasis", "build_vector_thetas", "hat_matrices", "fmn_star",
    "landau_level", "build_operator_family", "verify_tensor_identity", "run_suite",
]
