"""
Stochastic R-matrix builders

FEATURES:
- S_{I,J}(x) on V_I ⊗ V_J from the double-Phi sum (u = x^2)
- permutation operator, symmetric R-bar, M-matrix and crossing scalar g
- R-tilde by partial-transpose inversion or by crossing
- non-difference R-matrix S(x, y) on charge-truncated spaces
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List

from ..exactnum.errors import ConfigError, DimensionMismatch
from ..exactnum.scalars import ipow
from ..qkit.basis import enumerate_basis
from ..qkit.indices import add, between, dot, geq, qform_Q, sub, weight, zero
from ..qkit.qseries import phi, qpochhammer
from .operator import Operator, State, TensorSpace, embed

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ModelConfig:
    """Rank n of sl_n and the spins I, J of the two tensor factors."""

    n: int
    I: int = 1
    J: int = 1

    def __post_init__(self):
        if self.n < 2:
            raise ConfigError(f"n must be >= 2, got {self.n}")
        if self.I < 1 or self.J < 1:
            raise ConfigError(f"spins must be >= 1, got I={self.I}, J={self.J}")

    @property
    def m(self) -> int:
        return self.n - 1

    def swapped(self) -> "ModelConfig":
        return ModelConfig(self.n, self.J, self.I)

    def space(self) -> TensorSpace:
        return TensorSpace.of(enumerate_basis(self.n, self.I), enumerate_basis(self.n, self.J))

    def r(self, q: Fraction) -> Fraction:
        """Crossing shift r = q^n."""
        return ipow(q, self.n)


def conserving_rows(space: TensorSpace):
    """Candidate output states (i, j) with i + j equal to the input charge."""
    first, second = space.factors[0], space.factors[1]

    def candidates(col: State) -> List[State]:
        total = add(col[0], col[1])
        rows = []
        for i in between(zero(len(total)), total):
            j = sub(total, i)
            if weight(i) <= first.J and weight(j) <= second.J:
                rows.append((i, j))
        return rows

    return candidates


def s_entry(cfg: ModelConfig, i, j, ip, jp, u, q):
    """[S_{I,J}(x)]_{i,j}^{i',j'} with u = x^2; assumes i + j = i' + j'."""
    I, J = cfg.I, cfg.J
    q2 = q * q
    lam1, mu1 = ipow(q, J - I) / u, ipow(q, -I - J) / u
    lam2, mu2 = u / ipow(q, I + J), ipow(q, -2 * J)
    total = add(i, j)
    value = Fraction(0)
    for mvec in between(j, total):
        rest = sub(total, mvec)
        if not geq(jp, rest):
            continue
        value = value + phi(sub(mvec, j), mvec, lam1, mu1, q2) * phi(rest, jp, lam2, mu2, q2)
    return value


def build_S(cfg: ModelConfig, u, q) -> Operator:
    """Stochastic R-matrix S_{I,J}(x), x^2 = u; columns sum to 1."""
    space = cfg.space()
    return Operator.from_function(
        space,
        lambda row, col: s_entry(cfg, row[0], row[1], col[0], col[1], u, q),
        conserving_rows(space),
    )


def build_P(space: TensorSpace) -> Operator:
    """Permutation P|i>|j> = |j>|i> on V ⊗ V."""
    if space.sites != 2 or space.factors[0] != space.factors[1]:
        raise DimensionMismatch("the permutation operator needs two identical factors")
    return Operator(space, {space.ordinal[(b, a)]: {k: Fraction(1)} for k, (a, b) in enumerate(space.states)})


def build_S21(cfg: ModelConfig, u, q) -> Operator:
    """S_{J,I}(x) acting on V_I ⊗ V_J with its first factor on the second site."""
    return embed(build_S(cfg.swapped(), u, q), cfg.space(), (1, 0))


def rbar_prefactor(cfg: ModelConfig, i, j, ip, jp, x, q):
    I, J = cfg.I, cfg.J
    exponent = (dot(ip, jp) - dot(i, j) + J * weight(i) - I * weight(jp)
                - qform_Q(j, i) + qform_Q(ip, jp))
    return ipow(x, weight(i) - weight(ip)) * ipow(q, exponent)


def build_Rbar(cfg: ModelConfig, x, q) -> Operator:
    """Symmetric R-bar; takes x itself (not its square) since odd powers of x occur."""
    S = build_S(cfg, x * x, q)
    return S.map_entries(lambda row, col, v: rbar_prefactor(cfg, row[0], row[1], col[0], col[1], x, q) * v)


def m_weight(a, n: int) -> int:
    return 2 * sum((n - k) * a[k - 1] for k in range(1, n))


def build_M(n: int, J: int, q) -> Operator:
    """Diagonal M with entries q^{2 sum_k (n-k) i_k}."""
    space = TensorSpace.of(enumerate_basis(n, J))
    return Operator.diagonal(space, lambda s: ipow(q, m_weight(s[0], n)))


def build_M_inverse(n: int, J: int, q) -> Operator:
    space = TensorSpace.of(enumerate_basis(n, J))
    return Operator.diagonal(space, lambda s: ipow(q, -m_weight(s[0], n)))


def crossing_g(cfg: ModelConfig, u, q):
    """Scalar g(x) of crossing unitarity, u = x^2."""
    I, J, n = cfg.I, cfg.J, cfg.n
    q2 = q * q
    num = qpochhammer(u * ipow(q, 2 - I - J), q2, I) * qpochhammer(u * ipow(q, 2 * n - I + J), q2, I)
    den = qpochhammer(u * ipow(q, 2 - I + J), q2, I) * qpochhammer(u * ipow(q, 2 * n - I - J), q2, I)
    return num / den


def crossing_argument(cfg: ModelConfig, u, q):
    """Square of (q^n x)^{-1}."""
    return 1 / (ipow(q, 2 * cfg.n) * u)


def build_Rtilde(cfg: ModelConfig, u, q, method: str = "transpose-inverse") -> Operator:
    """R-tilde = ((S^{t2})^{-1})^{t2} on V_I ⊗ V_J.

    ``crossing`` evaluates g_{J,I}^{-1} M_2^{-1} S_{J,I}^{(21)}(1/(q^n x)) M_2 instead of inverting.
    """
    if method == "transpose-inverse":
        return build_S(cfg, u, q).partial_transpose(1).inverse().partial_transpose(1)
    if method != "crossing":
        raise ConfigError(f"unknown R-tilde method {method!r}")
    space = cfg.space()
    shifted = crossing_argument(cfg, u, q)
    flipped = embed(build_S(cfg.swapped(), shifted, q), space, (1, 0))
    m2 = embed(build_M(cfg.n, cfg.J, q), space, (1,))
    m2_inv = embed(build_M_inverse(cfg.n, cfg.J, q), space, (1,))
    g = crossing_g(cfg.swapped(), shifted, q)
    return (m2_inv @ flipped @ m2).scale(1 / g)


def nondiff_space(n: int, sector_cap: int) -> TensorSpace:
    """Two copies of the infinite module truncated to total weight <= sector_cap."""
    if sector_cap < 0:
        raise ConfigError(f"sector_cap must be >= 0, got {sector_cap}")
    single = enumerate_basis(n, sector_cap)
    return TensorSpace.of(single, single, cap=sector_cap)


def build_S_nondiff(n: int, x, y, q2, sector_cap: int) -> Operator:
    """Non-difference R-matrix S(x, y): entry delta * Phi_{q^2}(i | j'; x, y)."""
    space = nondiff_space(n, sector_cap)
    return Operator.from_function(
        space,
        lambda row, col: phi(row[0], col[1], x, y, q2),
        conserving_rows(space),
    )
