"""Entropic uncertainty bounds for POVMs, with numerical certificates."""

from .bounds import (
    BoundReport,
    Inequality,
    SaturationVerdict,
    check_free_order_bound,
    check_pair_bound,
    check_rank_one_saturation,
    check_single_bound,
    compare_bounds,
    f_bar,
    f_mixed,
    f_pure,
    phi,
    phi_bar,
    robertson_bound,
    term_bounds,
)
from .entropy import (
    OrderError,
    conjugate_order,
    min_entropy,
    parse_order,
    power_sum,
    quasi_norm,
    renyi_entropy,
    shannon_entropy,
)
from .interpolation import RieszResult, overlap_matrix, riesz_check, squared_riesz_check
from .linalg import (
    DimensionError,
    NotHermitianError,
    NotIsometryError,
    NotPSDError,
    SpectralDecomposition,
    ValidationError,
    hermitian_eig,
    operator_norm,
    psd_sqrt,
)
from .measurement import (
    CompletenessError,
    DensityMatrix,
    Measurement,
    MeasurementKind,
    PureState,
    density_matrix,
    is_projective,
    outcome_distribution,
    pure_state,
    validate_measurement,
)
from .naimark import DilationReport, NaimarkDilation, dilate, verify_dilation

__all__ = [
    "BoundReport",
    "check_free_order_bound",
    "check_pair_bound",
    "check_rank_one_saturation",
    "check_single_bound",
    "compare_bounds",
    "CompletenessError",
    "conjugate_order",
    "density_matrix",
    "DensityMatrix",
    "dilate",
    "DilationReport",
    "DimensionError",
    "f_bar",
    "f_mixed",
    "f_pure",
    "hermitian_eig",
    "Inequality",
    "is_projective",
    "Measurement",
    "MeasurementKind",
    "min_entropy",
    "NaimarkDilation",
    "NotHermitianError",
    "NotIsometryError",
    "NotPSDError",
    "operator_norm",
    "OrderError",
    "outcome_distribution",
    "overlap_matrix",
    "parse_order",
    "phi",
    "phi_bar",
    "power_sum",
    "psd_sqrt",
    "pure_state",
    "PureState",
    "quasi_norm",
    "renyi_entropy",
    "riesz_check",
    "RieszResult",
    "robertson_bound",
    "SaturationVerdict",
    "shannon_entropy",
    "SpectralDecomposition",
    "squared_riesz_check",
    "term_bounds",
    "validate_measurement",
    "ValidationError",
    "verify_dilation",
]
