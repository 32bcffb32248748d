"""High-precision toolkit for the Euler double zeta-function zeta2(s1, s2):
evaluation by harmonic product and truncated Euler-Maclaurin summation,
zero location on the diagonal s1 = s2, argument-principle certification,
and a persisted zero catalog with counting statistics."""

__version__ = "0.1.0"

from .precision import CERTIFY, COARSE, SEARCH, PrecisionContext
from .arith import bernoulli_number, complex_pow, pochhammer
from .rzeta import (ZetaEvalPolicy, zeta, zeta_at_negative_integer,
                    zeta_derivative)
from .double_zeta import (EvalParams, SingularityMap, central_value,
                          diagonal_derivative, double_zeta_diagonal,
                          double_zeta_em, em_params_for, em_tail_bound,
                          params_for_accuracy, phi_tail, zero_free_bound,
                          zero_free_threshold)
from .search import (EULER_MACLAURIN, HARMONIC_PRODUCT, ScanConfig,
                     ZeroRecord, find_zeros_region, real_axis_scan,
                     refine_zero, scan_line, scan_values)
from .verify import (AccuracyReport, Rectangle, certify_zero, cross_check,
                     winding_number)
from .catalog import ZeroCatalog, linear_fit
from . import errors

__all__ = [
    "PrecisionContext", "SEARCH", "CERTIFY", "COARSE",
    "bernoulli_number", "pochhammer", "complex_pow",
    "ZetaEvalPolicy", "zeta", "zeta_derivative", "zeta_at_negative_integer",
    "EvalParams", "SingularityMap", "phi_tail", "double_zeta_em",
    "double_zeta_diagonal", "diagonal_derivative", "central_value",
    "zero_free_bound", "zero_free_threshold", "em_params_for",
    "em_tail_bound", "params_for_accuracy",
    "ScanConfig", "ZeroRecord", "scan_values", "scan_line", "refine_zero",
    "find_zeros_region", "real_axis_scan",
    "HARMONIC_PRODUCT", "EULER_MACLAURIN",
    "Rectangle", "AccuracyReport", "winding_number", "certify_zero",
    "cross_check",
    "ZeroCatalog", "linear_fit",
    "errors",
]
