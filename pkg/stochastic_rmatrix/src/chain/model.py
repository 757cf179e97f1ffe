"""
Open-chain configuration and the matrix container shared by the transfer
matrix, the Hamiltonian and the Markov generator.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from ..boundary.kmatrix import LEFT_UPPER, RIGHT_LOWER, RIGHT_UPPER
from ..exactnum.errors import ConfigError
from ..exactnum.scalars import fmt_rat
from ..qkit.basis import enumerate_basis
from ..rmat.operator import Operator, TensorSpace
from ..rmat.rmatrix import ModelConfig

logger = logging.getLogger(__name__)

HAMILTONIAN = "hamiltonian"
GENERATOR = "generator"
TRANSFER = "transfer"

RIGHT_FAMILIES = (RIGHT_UPPER, RIGHT_LOWER)
LEFT_FAMILIES = (LEFT_UPPER,)


@dataclass(frozen=True)
class ChainSpec:
    """N sites of V_J^(n) between a left and a right boundary."""

    n: int
    J: int
    N: int
    q: Fraction
    nu: Fraction
    nu_left: Optional[Fraction] = None
    right_family: str = RIGHT_LOWER
    left_family: str = LEFT_UPPER

    def __post_init__(self):
        if self.N < 1:
            raise ConfigError(f"N must be >= 1, got {self.N}")
        if self.q in (0, 1, -1):
            raise ConfigError(f"q must not be 0 or ±1, got {self.q}")
        if self.right_family not in RIGHT_FAMILIES:
            raise ConfigError(f"right boundary must be one of {RIGHT_FAMILIES}, got {self.right_family!r}")
        if self.left_family not in LEFT_FAMILIES:
            raise ConfigError(f"left boundary must be one of {LEFT_FAMILIES}, got {self.left_family!r}")
        ModelConfig(self.n, self.J, self.J)

    @property
    def cfg(self) -> ModelConfig:
        return ModelConfig(self.n, self.J, self.J)

    @property
    def left_nu(self) -> Fraction:
        return self.nu if self.nu_left is None else self.nu_left

    def site_space(self) -> TensorSpace:
        return TensorSpace.of(enumerate_basis(self.n, self.J))

    def quantum_space(self) -> TensorSpace:
        return TensorSpace.of(*([enumerate_basis(self.n, self.J)] * self.N))

    def with_point(self, q: Fraction, nu: Fraction) -> "ChainSpec":
        return ChainSpec(self.n, self.J, self.N, q, nu, self.nu_left, self.right_family, self.left_family)

    def describe(self) -> str:
        return (f"n={self.n} J={self.J} N={self.N} q={fmt_rat(self.q)} nu={fmt_rat(self.nu)} "
                f"nu_L={fmt_rat(self.left_nu)} {self.left_family}|{self.right_family}")


@dataclass
class GeneratorMatrix:
    """H, M = -H^T or T(u) on the quantum space."""

    role: str
    op: Operator
    params: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.op.dim

    def dense(self) -> List[List]:
        return self.op.dense()

    def labels(self) -> List[str]:
        return ["|".join("".join(map(str, a)) for a in state) for state in self.op.space.states]

    def to_generator(self) -> "GeneratorMatrix":
        """Row-convention Markov generator M = -H^T (M[i][j] is the rate i -> j)."""
        if self.role == GENERATOR:
            return self
        if self.role != HAMILTONIAN:
            raise ConfigError(f"cannot turn a {self.role} matrix into a generator")
        return GeneratorMatrix(GENERATOR, (-self.op).transpose(), dict(self.params))

    def column_convention(self) -> Operator:
        """-H, whose columns sum to zero."""
        if self.role == HAMILTONIAN:
            return -self.op
        if self.role == GENERATOR:
            return self.op.transpose()
        raise ConfigError(f"a {self.role} matrix is not a generator")

    def negative_rates(self):
        """(from, to, rate) for every negative off-diagonal rate."""
        M = self.to_generator().op
        labels = self.labels()
        return [(labels[r], labels[c], float(v)) for r, c, v in M.entries() if r != c and v < 0]
