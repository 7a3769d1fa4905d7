"""Exact construction and analysis of LB-TD Leonard pairs over Q(q)."""

from .awrel import AWScalars, aw_scalars, closed_scalars, tridiag_coeffs, verify_aw
from .classify import LeonardType, Unclassified, classify_type, lbtd_types
from .exactmat import FieldMatrix, determinant, is_lbtd_pair
from .expr import parse_scalar
from .lbtd import (
    LBTDPair,
    RecoveryResult,
    build,
    case_entry_forms,
    check_conditions,
    has_lbtd_form,
    parameter_array_of,
    recover_params,
    theta_star_of,
    verify_leonard_pair,
)
from .params import (
    ClosedFormParams,
    ParameterArray,
    check_parameter_array,
    split_basis,
    split_sequences_of,
    xi_from_c,
)
from .qfield import (
    Q,
    QuadExtElement,
    RationalFunction,
    eval_at,
    invert_q,
    normalize,
    qpow,
    rf,
    sqrt_exact,
)

__all__ = [
    "AWScalars", "aw_scalars", "closed_scalars", "tridiag_coeffs", "verify_aw",
    "LeonardType", "Unclassified", "classify_type", "lbtd_types", "FieldMatrix",
    "determinant", "is_lbtd_pair", "parse_scalar", "LBTDPair", "RecoveryResult", "build",
    "case_entry_forms", "check_conditions", "has_lbtd_form", "parameter_array_of",
    "recover_params", "theta_star_of", "verify_leonard_pair", "ClosedFormParams",
    "ParameterArray", "check_parameter_array", "split_basis", "split_sequences_of",
    "xi_from_c", "Q", "QuadExtElement", "RationalFunction", "eval_at", "invert_q",
    "normalize", "qpow", "rf", "sqrt_exact",
]
