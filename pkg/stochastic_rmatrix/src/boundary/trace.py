"""
Partial-trace maps between the dual solution K-tilde and the reflection
solution K-bar (equal spins only, so that P is defined).

    K-bar(x)   = tr_0( K-tilde_0(1/x) S_01(1/x^2) P_01 )
    K-tilde(x) = tr_0( K-bar_0(1/x) S-tilde_01(x^2) P_01 )

Both functions take the input already evaluated at the inverted argument.
"""

import logging

from ..exactnum.errors import DimensionMismatch
from ..exactnum.scalars import ipow
from ..qkit.qseries import lambda_function
from ..rmat.operator import Operator, embed
from ..rmat.rmatrix import ModelConfig, build_P, build_Rtilde, build_S
from .kmatrix import DUAL, LEFT_UPPER, BoundaryMatrix, build_K, build_Ktilde

logger = logging.getLogger(__name__)


def _require_equal_spins(cfg: ModelConfig) -> None:
    if cfg.I != cfg.J:
        raise DimensionMismatch(f"trace maps need I = J, got I={cfg.I}, J={cfg.J}")


def _contract(K: BoundaryMatrix, kernel: Operator, cfg: ModelConfig) -> Operator:
    space = cfg.space()
    product = embed(K.op, space, (0,)) @ kernel @ build_P(space)
    return product.trace_out(0)


def kbar_from_ktilde_trace(ktilde_inv: BoundaryMatrix, cfg: ModelConfig, u, q) -> BoundaryMatrix:
    """K-bar at x^2 = u from K-tilde evaluated at 1/u."""
    _require_equal_spins(cfg)
    op = _contract(ktilde_inv, build_S(cfg, 1 / (u * u), q), cfg)
    return ktilde_inv.with_op(op, "bar(trace)", u=u)


def ktilde_from_kbar_trace(kbar_inv: BoundaryMatrix, cfg: ModelConfig, u, q) -> BoundaryMatrix:
    """K-tilde at x^2 = u from K-bar evaluated at 1/u."""
    _require_equal_spins(cfg)
    op = _contract(kbar_inv, build_Rtilde(cfg, u * u, q), cfg)
    return kbar_inv.with_op(op, DUAL, u=u)


def trace_built_kbar(n: int, J: int, u, nu, q) -> BoundaryMatrix:
    """K-bar(x) from the upper-triangular K-tilde with nu -> 1/(nu q^n)."""
    cfg = ModelConfig(n, J, J)
    shifted_nu = 1 / (nu * ipow(q, n))
    return kbar_from_ktilde_trace(build_Ktilde(n, J, 1 / u, shifted_nu, q), cfg, u, q)


def lambda_scaled_left_upper(n: int, J: int, u, nu, q) -> Operator:
    """lambda_J^(n)(x) times the closed-form left-upper K-bar at w = u."""
    closed = build_K(n, J, u, nu, q, LEFT_UPPER)
    return closed.op.scale(lambda_function(n, J, u, nu, q))
