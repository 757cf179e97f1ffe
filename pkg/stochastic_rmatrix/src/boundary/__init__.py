"""Boundary K-matrices, their transformations and reflection-equation checks."""

from .golden import reference_matrix, six_vertex
from .kmatrix import (
    DUAL,
    LEFT_LOWER,
    LEFT_UPPER,
    NONDIFF_BAR,
    NONDIFF_RIGHT,
    RIGHT_LOWER,
    RIGHT_UPPER,
    STOCHASTIC_FAMILIES,
    BoundaryFactory,
    BoundaryMatrix,
    build_K,
    build_K_nondiff,
    build_Kbar_nondiff,
    build_Ktilde,
    check_columns_stochastic,
    check_normalized,
    check_triangular,
    k_to_kbar,
    ktilde_argument,
    sigma_twist,
)
from .trace import kbar_from_ktilde_trace, ktilde_from_kbar_trace, lambda_scaled_left_upper, trace_built_kbar
from .verify import (
    check_recurrences,
    dual_factory,
    family_factory,
    kbar_factory,
    recurrence_residuals,
    reflection_bar_sides,
    reflection_sides,
    twisted_factory,
    verify_dual_reflection,
    verify_family_structure,
    verify_recurrences,
    verify_reference_matrices,
    verify_reflection,
    verify_reflection_bar,
    verify_reflection_nondiff,
    verify_reflection_nondiff_bar,
    verify_nondiff_stochastic,
    verify_trace_lambda,
    verify_trace_roundtrip,
)
