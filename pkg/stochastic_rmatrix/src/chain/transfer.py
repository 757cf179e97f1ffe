"""
Double-row transfer matrix and Hamiltonians of the open chain

FEATURES:
- left dual boundary normalized so that its trace-built K-bar is the
  stochastic left-upper solution
- T(u) = tr_0[ K~_0 R_01 ... R_0N K_0 R_N0 ... R_10 ] over sites 0 (auxiliary), 1..N
- local Hamiltonian B_L + sum h_{k,k+1} + B_R and the same operator from -(1/4) T'(1)
- periodic Hamiltonian for comparison

Derivatives in x at x = 1 come from dual numbers in u = x^2 seeded as 1 + 2 eps.
"""

import logging
from fractions import Fraction
from typing import Dict, List

from ..boundary.kmatrix import BoundaryMatrix, build_K, build_Ktilde
from ..boundary.trace import kbar_from_ktilde_trace
from ..exactnum.errors import ConfigError
from ..exactnum.scalars import deriv_part, dual_variable, exact, ipow, value_part
from ..qkit.basis import enumerate_basis
from ..qkit.qseries import lambda_function
from ..rmat.operator import Operator, TensorSpace, embed, product_of
from ..rmat.rmatrix import build_P, build_S
from .model import HAMILTONIAN, TRANSFER, ChainSpec, GeneratorMatrix

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


def x_at_one():
    """u = x^2 as a dual number at x = 1, so that derivative parts are d/dx."""
    return dual_variable(1, 2)


def derivative(op: Operator) -> Operator:
    return op.map_entries(lambda row, col, v: deriv_part(v))


def value(op: Operator) -> Operator:
    return op.map_entries(lambda row, col, v: value_part(v))


def chain_ktilde(spec: ChainSpec, u) -> BoundaryMatrix:
    """Left dual boundary: M^{-1} K(1/(q^{n/2} x)) with nu -> 1/(nu_L q^n), divided by lambda(1/x)."""
    u = exact(u)
    shifted = 1 / (spec.left_nu * ipow(spec.q, spec.n))
    base = build_Ktilde(spec.n, spec.J, u, shifted, spec.q)
    scale = lambda_function(spec.n, spec.J, 1 / u, spec.left_nu, spec.q)
    return base.with_op(base.op.scale(1 / scale), nu=spec.left_nu)


def chain_k(spec: ChainSpec, w) -> BoundaryMatrix:
    return build_K(spec.n, spec.J, w, spec.nu, spec.q, spec.right_family)


def double_row_transfer(spec: ChainSpec, u) -> GeneratorMatrix:
    V = enumerate_basis(spec.n, spec.J)
    space = TensorSpace.of(*([V] * (spec.N + 1)))
    S = build_S(spec.cfg, u, spec.q)
    forward = [embed(S, space, (0, k)) for k in range(1, spec.N + 1)]
    backward = [embed(S, space, (k, 0)) for k in range(spec.N, 0, -1)]
    left = embed(chain_ktilde(spec, u).op, space, (0,))
    right = embed(chain_k(spec, u).op, space, (0,))
    full = product_of([left] + forward + [right] + backward)
    return GeneratorMatrix(TRANSFER, full.trace_out(0), {"u": u})


def trace_ktilde_at_one(spec: ChainSpec):
    return chain_ktilde(spec, 1).op.trace()


def hamiltonian_terms(spec: ChainSpec) -> Dict[str, object]:
    """B_L (site 1), the bulk terms h_{k,k+1} and B_R (site N) on the quantum space."""
    space = spec.quantum_space()
    u = x_at_one()
    norm = trace_ktilde_at_one(spec)
    if norm == 0:
        raise ConfigError("tr K~(1) vanishes; the Hamiltonian is undefined at this point")

    kbar = kbar_from_ktilde_trace(chain_ktilde(spec, 1 / u), spec.cfg, u, spec.q)
    b_left = embed(derivative(kbar.op), space, (0,)).scale(1 / (4 * norm))

    local = hamiltonian_terms_bulk(spec)
    bulk: List[Operator] = [embed(local, space, (k, k + 1)) for k in range(spec.N - 1)]

    b_right = embed(derivative(chain_k(spec, u).op), space, (spec.N - 1,)).scale(-QUARTER)
    logger.debug(f"🔍 Hamiltonian terms for {spec.describe()}: tr K~(1) = {norm}")
    return {"B_L": b_left, "bulk": bulk, "B_R": b_right, "local": local}


def hamiltonian_local(spec: ChainSpec) -> GeneratorMatrix:
    terms = hamiltonian_terms(spec)
    total = terms["B_L"] + terms["B_R"]
    for h in terms["bulk"]:
        total = total + h
    return GeneratorMatrix(HAMILTONIAN, total, {"method": "local"})


def hamiltonian_from_transfer(spec: ChainSpec) -> GeneratorMatrix:
    """H = -(1/4) T'(1) / tr K~(1), using that T(1) = tr K~(1) * Id."""
    T = double_row_transfer(spec, x_at_one()).op
    norm = trace_ktilde_at_one(spec)
    if norm == 0:
        raise ConfigError("tr K~(1) vanishes; the Hamiltonian is undefined at this point")
    return GeneratorMatrix(HAMILTONIAN, derivative(T).scale(-QUARTER / norm), {"method": "transfer"})


def periodic_hamiltonian(spec: ChainSpec) -> GeneratorMatrix:
    """Sum of the bulk terms around a ring, without boundaries."""
    if spec.N < 2:
        raise ConfigError("a periodic chain needs N >= 2")
    space = spec.quantum_space()
    local = hamiltonian_terms_bulk(spec)
    total = Operator(space)
    for k in range(spec.N):
        total = total + embed(local, space, (k, (k + 1) % spec.N))
    return GeneratorMatrix(HAMILTONIAN, total, {"method": "periodic"})


def hamiltonian_terms_bulk(spec: ChainSpec) -> Operator:
    """-(1/2) R'(1) P on a pair of sites."""
    u = x_at_one()
    return (derivative(build_S(spec.cfg, u, spec.q)) @ build_P(spec.cfg.space())).scale(-HALF)
