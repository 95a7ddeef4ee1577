"""Numerical laboratory for Janowski-type subordination implications with a fixed initial coefficient.

Modules: :mod:`.params` (parameters and Moebius-disk geometry),
:mod:`.operators` (operators and their admissibility coefficient systems),
:mod:`.conditions` (closed-form sufficient conditions and subclass
bounds), :mod:`.oracle` (brute-force admissibility sweep), :mod:`.lab`
(test functions and the falsification harness) and :mod:`.cli`.
"""

__version__ = "0.1.0"

from .conditions import (ConditionReport, DeltaKind, check_lemma, compute_gh, compute_klmn,
                         corollary_delta, disagreement_flags, half_line_quad_max)
from .lab import (AnalyticSample, Classification, find_counterexample, implication_sweep,
                  koebe, sample_p, series_to_p_of_f, starlike_membership, test_implication)
from .operators import CoeffSystem, OperatorKind, PsiPoint, coeff_system, psi_value, re_psi_quartic
from .oracle import OracleGrid, OracleReport, quartic_negativity, sigma_bound, verify_admissibility
from .params import (DiskOrHalfPlane, ParameterError, Parameters, is_subordinate_numeric,
                     janowski_image, validate_params)

__all__ = [
    "AnalyticSample", "Classification", "CoeffSystem", "ConditionReport", "DeltaKind",
    "DiskOrHalfPlane", "OperatorKind", "OracleGrid", "OracleReport", "ParameterError",
    "Parameters", "PsiPoint", "check_lemma", "coeff_system", "compute_gh", "compute_klmn",
    "corollary_delta", "disagreement_flags", "find_counterexample", "half_line_quad_max",
    "implication_sweep", "is_subordinate_numeric", "janowski_image", "koebe", "psi_value",
    "quartic_negativity", "re_psi_quartic", "sample_p", "series_to_p_of_f", "sigma_bound",
    "starlike_membership", "test_implication", "validate_params", "verify_admissibility",
]
