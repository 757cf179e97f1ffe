"""Stochastic R-matrices, L-operators, crossing objects and their verifiers."""

from .loperators import FIRST, SECOND, build_L
from .operator import Operator, TensorSpace, embed, gauss_jordan_inverse, kron, product_of
from .rmatrix import (
    ModelConfig,
    build_M,
    build_M_inverse,
    build_P,
    build_Rbar,
    build_Rtilde,
    build_S,
    build_S21,
    build_S_nondiff,
    crossing_argument,
    crossing_g,
    nondiff_space,
)
from .verify import (
    crossing_product,
    verify_crossing,
    verify_l_operators,
    verify_m_invariance,
    verify_modified_ybe,
    verify_nondiff_inverse,
    verify_nondiff_specialization,
    verify_regularity,
    verify_rtilde_methods,
    verify_stochastic,
    verify_symmetries,
    verify_unitarity,
    verify_ybe,
)

BlockOperator = Operator
