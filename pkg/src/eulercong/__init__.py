"""Exact q-series tools for congruences of p_{8k}(n), p_{3k}(n) and related partition functions."""

__version__ = "0.1.0"

from .series import DomainError, PrecisionError, TruncatedLaurentSeries  # noqa: E402
from .eta import EtaQuotient, PartitionFunction, expand_eta, parse_eta, partition_gf  # noqa: E402
from .dissect import extract, op_G, op_U, op_g  # noqa: E402
from .modpoly import HauptPoly, eval_haupt, u2_poly, u3_poly, u_poly, verify_modular_equation  # noqa: E402
from .transition import CoeffState, StepMatrix, build_step_matrix, coeff_table, verify_gf_identity, verify_order4  # noqa: E402
from .period import PeriodReport, Threshold, mu, nu, period_report  # noqa: E402
from .congruence import (BudgetExceeded, CongruenceFamily, application_families,  # noqa: E402
                         constant_term_check, family_p3k, family_p8k, verify_family)

__all__ = [
    "BudgetExceeded", "CoeffState", "CongruenceFamily", "DomainError", "EtaQuotient",
    "HauptPoly", "PartitionFunction", "PeriodReport", "PrecisionError", "StepMatrix",
    "Threshold", "TruncatedLaurentSeries", "application_families", "build_step_matrix",
    "coeff_table", "constant_term_check", "eval_haupt", "expand_eta", "extract",
    "family_p3k", "family_p8k", "mu", "nu", "op_G", "op_U", "op_g", "parse_eta",
    "partition_gf", "period_report", "u2_poly", "u3_poly", "u_poly", "verify_family",
    "verify_gf_identity", "verify_modular_equation", "verify_order4",
]
