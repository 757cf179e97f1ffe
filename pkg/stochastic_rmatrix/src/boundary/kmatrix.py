"""
Boundary K-matrices

FEATURES:
- right/left, upper/lower triangular stochastic solutions on V_J^(n)
- dual solution K-tilde = M^{-1} K(1/(q^{n/2} y)), stored through w = y^2
- sigma twist (right and bar directions) and the K -> K-bar map
- non-difference K and K-bar on the truncated infinite module
- per-family triangularity and column-sum checks

A matrix entry K[j; l] sits at row j, column l, so stochastic families have
unit column sums.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from ..exactnum.errors import ConfigError
from ..exactnum.report import Witness
from ..exactnum.scalars import exact, fmt_rat, ipow
from ..qkit.basis import enumerate_basis
from ..qkit.indices import MultiIndex, geq, rotate_sigma, sub, tau_sigma, weight
from ..qkit.qseries import phi, phi_hat
from ..rmat.operator import Operator, TensorSpace
from ..rmat.rmatrix import build_M_inverse

logger = logging.getLogger(__name__)

RIGHT_UPPER = "right-upper"
RIGHT_LOWER = "right-lower"
LEFT_UPPER = "left-upper"
LEFT_LOWER = "left-lower"
DUAL = "dual"
NONDIFF_RIGHT = "nondiff-right"
NONDIFF_BAR = "nondiff-bar"

STOCHASTIC_FAMILIES = (RIGHT_UPPER, RIGHT_LOWER, LEFT_UPPER, LEFT_LOWER)
UPPER_FAMILIES = (RIGHT_UPPER, LEFT_UPPER, NONDIFF_RIGHT, NONDIFF_BAR)


@dataclass
class BoundaryMatrix:
    """A K-matrix on a single V_J^(n) together with how it was built."""

    op: Operator
    family: str
    n: int
    J: int
    params: Dict[str, object] = field(default_factory=dict)

    @property
    def space(self) -> TensorSpace:
        return self.op.space

    @property
    def dim(self) -> int:
        return self.op.dim

    def at(self, j: MultiIndex, l: MultiIndex):
        """K[j; l]; indices outside the basis read as 0."""
        ordinal = self.space.ordinal
        if (j,) not in ordinal or (l,) not in ordinal:
            return Fraction(0)
        return self.op.at((j,), (l,))

    def dense(self) -> List[List]:
        return self.op.dense()

    def column_sums(self) -> List:
        return self.op.column_sums()

    def with_op(self, op: Operator, family: Optional[str] = None, **params) -> "BoundaryMatrix":
        merged = dict(self.params)
        merged.update(params)
        return BoundaryMatrix(op, family or self.family, self.n, self.J, merged)

    def describe(self) -> str:
        shown = ", ".join(f"{k}={fmt_rat(v)}" for k, v in self.params.items() if k != "q")
        return f"{self.family} K on V_{self.J}^({self.n}) [{shown}]"


BoundaryFactory = Callable[..., BoundaryMatrix]


def single_space(n: int, J: int) -> TensorSpace:
    return TensorSpace.of(enumerate_basis(n, J))


def _from_entry(n: int, J: int, entry: Callable[[MultiIndex, MultiIndex], object]) -> Operator:
    return Operator.from_function(single_space(n, J), lambda row, col: entry(row[0], col[0]))


def right_upper_entry(j, l, w, nu, q, J):
    q2 = q * q
    return phi(j, l, w / (nu * ipow(q, J)), 1 / (w * nu * ipow(q, J)), q2)


def right_lower_entry(j, l, w, nu, q, J):
    q2 = q * q
    sj, sl = rotate_sigma(j, J), rotate_sigma(l, J)
    return phi_hat(sub(sl, sj), sl, 1 / (w * w), 1 / (w * nu * ipow(q, J)), q2)


def left_upper_entry(j, l, w, nu, q, J):
    q2 = q * q
    return phi(sub(l, j), l, w * w, w / (nu * ipow(q, J)), q2)


def left_lower_entry(j, l, w, nu, q, J):
    q2 = q * q
    sj, sl = rotate_sigma(j, J), rotate_sigma(l, J)
    return phi_hat(sj, sl, 1 / (w * nu * ipow(q, J)), w / (nu * ipow(q, J)), q2)


_ENTRIES = {
    RIGHT_UPPER: right_upper_entry,
    RIGHT_LOWER: right_lower_entry,
    LEFT_UPPER: left_upper_entry,
    LEFT_LOWER: left_lower_entry,
}


def build_K(n: int, J: int, w, nu, q, family: str = RIGHT_UPPER) -> BoundaryMatrix:
    """Stochastic triangular solution of the given family at w = y^2."""
    entry = _ENTRIES.get(family)
    if entry is None:
        raise ConfigError(f"unknown boundary family {family!r}; expected one of {', '.join(_ENTRIES)}")
    w, nu, q = exact(w), exact(nu), exact(q)
    op = _from_entry(n, J, lambda j, l: entry(j, l, w, nu, q, J))
    return BoundaryMatrix(op, family, n, J, {"w": w, "nu": nu, "q": q})


def ktilde_argument(n: int, u, q):
    """Square of 1/(q^{n/2} x)."""
    return 1 / (ipow(q, n) * u)


def build_Ktilde(n: int, J: int, u, nu, q) -> BoundaryMatrix:
    """Dual solution M^{-1} K(1/(q^{n/2} x)) built from the right-upper family, u = x^2."""
    u = exact(u)
    base = build_K(n, J, ktilde_argument(n, u, q), nu, q, RIGHT_UPPER)
    op = build_M_inverse(n, J, q) @ base.op
    return BoundaryMatrix(op, DUAL, n, J, {"u": u, "nu": nu, "q": q})


def sigma_twist(K: BoundaryMatrix, mu, direction: str = "right") -> BoundaryMatrix:
    """Twist a solution by the cyclic rotation sigma with free parameter mu."""
    J = K.J
    w, q = K.params["w"], K.params["q"]
    a = 1 / (w * mu * ipow(q, J))
    b = w / (mu * ipow(q, J))
    if direction == "right":
        def entry(j, l):
            sj, sl = rotate_sigma(j, J), rotate_sigma(l, J)
            return ipow(a, -weight(sj)) * ipow(b, weight(sl)) * K.at(sj, sl)
    elif direction == "bar":
        def entry(j, l):
            sj, sl = rotate_sigma(j, J), rotate_sigma(l, J)
            return ipow(b, weight(sj)) * ipow(a, -weight(sl)) * K.at(sj, sl)
    else:
        raise ConfigError(f"direction must be 'right' or 'bar', got {direction!r}")
    op = _from_entry(K.n, J, entry)
    return K.with_op(op, f"{K.family}+sigma", mu=mu)


def k_to_kbar(K: BoundaryMatrix) -> BoundaryMatrix:
    """K-bar(y)[j; l] = K(1/y)[tau sigma j; tau sigma l].

    The input is K evaluated at w, so the result is K-bar at 1/w.
    """
    J = K.J
    op = _from_entry(K.n, J, lambda j, l: K.at(tau_sigma(j, J), tau_sigma(l, J)))
    return K.with_op(op, f"bar({K.family})", w=1 / K.params["w"])


# non-difference model ------------------------------------------------------

def build_K_nondiff(n: int, x, xbar, z, q2, sector_cap: int) -> BoundaryMatrix:
    """K(x, xbar)[j; l] = Phi_{q^2}(j | l; z^2 x, z^2 xbar) on weights <= sector_cap."""
    op = _from_entry(n, sector_cap, lambda j, l: phi(j, l, z * z * x, z * z * xbar, q2))
    return BoundaryMatrix(op, NONDIFF_RIGHT, n, sector_cap, {"x": x, "xbar": xbar, "z": z, "q2": q2})


def build_Kbar_nondiff(n: int, x, xbar, q2, sector_cap: int) -> BoundaryMatrix:
    """K-bar(x, xbar)[j; l] = Phi_{q^2}(l - j | l; xbar/x, xbar)."""
    op = _from_entry(n, sector_cap, lambda j, l: phi(sub(l, j), l, xbar / x, xbar, q2))
    return BoundaryMatrix(op, NONDIFF_BAR, n, sector_cap, {"x": x, "xbar": xbar, "q2": q2})


# structural checks -----------------------------------------------------------

def check_columns_stochastic(K: BoundaryMatrix) -> Optional[Witness]:
    for c, total in enumerate(K.column_sums()):
        if total != 1:
            return Witness((K.space.states[c][0],), fmt_rat(total), "1/1", f"{K.family} column sum")
    return None


def check_triangular(K: BoundaryMatrix) -> Optional[Witness]:
    """Upper families need l >= j; lower families need sigma l >= sigma j."""
    upper = K.family in UPPER_FAMILIES
    for r, c, value in K.op.entries():
        j, l = K.space.states[r][0], K.space.states[c][0]
        allowed = geq(l, j) if upper else geq(rotate_sigma(l, K.J), rotate_sigma(j, K.J))
        if not allowed:
            return Witness((j, l), fmt_rat(value), "0/1", f"{K.family} triangularity")
    return None


def check_normalized(K: BoundaryMatrix) -> Optional[Witness]:
    """K = identity (meaningful at w = 1)."""
    return K.op.compare(Operator.identity(K.space), f"{K.family} normalization")
