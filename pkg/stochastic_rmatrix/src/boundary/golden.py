"""
Explicit boundary matrices for n = 2, J = 1 and n = 3, J = 2.

Written out entry by entry in lambda = w/(nu q^J), mu = 1/(w nu q^J), p = q^2,
independently of the Phi-function builders, and used as reference data.
Basis order is ascending lexicographic: (0), (1) and
(0,0), (0,1), (0,2), (1,0), (1,1), (2,0).
"""

from fractions import Fraction
from typing import Callable, Dict, List

from ..exactnum.errors import ConfigError
from ..qkit.qseries import qpochhammer
from .kmatrix import LEFT_LOWER, LEFT_UPPER, RIGHT_LOWER, RIGHT_UPPER

Matrix = List[List]


def six_vertex(family: str, w, nu, q) -> Matrix:
    """The four 2x2 solutions for n = 2, J = 1."""
    one, zero = Fraction(1), Fraction(0)
    qn = q * nu
    if family == RIGHT_UPPER:
        return [[one, qn * (1 - w * w) / (w * (1 - qn * w))],
                [zero, (w - qn) / (w * (1 - qn * w))]]
    if family == RIGHT_LOWER:
        return [[w * (w - qn) / (1 - qn * w), zero],
                [(1 - w * w) / (1 - qn * w), one]]
    if family == LEFT_UPPER:
        return [[one, (w * w - 1) / (w * (w - qn))],
                [zero, (1 - qn * w) / (w * (w - qn))]]
    if family == LEFT_LOWER:
        return [[w * (1 - qn * w) / (w - qn), zero],
                [qn * (w * w - 1) / (w - qn), one]]
    raise ConfigError(f"no reference matrix for family {family!r}")


def _spin_two(family: str, w, nu, q) -> Matrix:
    p = q * q
    lam = w / (nu * p)
    mu = 1 / (w * nu * p)
    one, z = Fraction(1), Fraction(0)

    def P(a, k):
        return qpochhammer(a, p, k)

    b21 = 1 + p
    if family == RIGHT_UPPER:
        r = mu / lam
        d1, d2 = r * P(lam, 1) / P(mu, 1), r * r * P(lam, 2) / P(mu, 2)
        mix = r * P(lam, 1) * P(r, 1) / P(mu, 2)
        top1, top2 = P(r, 1) / P(mu, 1), P(r, 2) / P(mu, 2)
        return [
            [one, top1, top2, top1, top2, top2],
            [z, d1, mix * b21, z, p * mix, z],
            [z, z, d2, z, z, z],
            [z, z, z, d1, mix, mix * b21],
            [z, z, z, z, d2, z],
            [z, z, z, z, z, d2],
        ]
    if family == RIGHT_LOWER:
        r = mu / lam
        diag = P(lam, 2) / P(mu, 2)
        mix = lam * P(lam, 1) * P(r, 1) / P(mu, 2)
        d1 = P(lam, 1) / P(mu, 1)
        far2, far1 = lam * lam * P(r, 2) / P(mu, 2), lam * P(r, 1) / P(mu, 1)
        return [
            [diag, z, z, z, z, z],
            [z, diag, z, z, z, z],
            [z, z, diag, z, z, z],
            [mix * b21, p * mix, z, d1, z, z],
            [z, mix, mix * b21, z, d1, z],
            [far2, far2, far2, far1, far1, one],
        ]
    if family == LEFT_UPPER:
        r = lam / mu
        top1, top2 = mu * P(r, 1) / P(lam, 1), mu * mu * P(r, 2) / P(lam, 2)
        d1, d2 = P(mu, 1) / P(lam, 1), P(mu, 2) / P(lam, 2)
        mix = mu * P(mu, 1) * P(r, 1) / P(lam, 2)
        return [
            [one, top1, top2, top1, top2, top2],
            [z, d1, mix * b21, z, mix, z],
            [z, z, d2, z, z, z],
            [z, z, z, d1, p * mix, mix * b21],
            [z, z, z, z, d2, z],
            [z, z, z, z, z, d2],
        ]
    if family == LEFT_LOWER:
        r = lam / mu
        diag = r * r * P(mu, 2) / P(lam, 2)
        mix = r * P(mu, 1) * P(r, 1) / P(lam, 2)
        d1 = r * P(mu, 1) / P(lam, 1)
        far2, far1 = P(r, 2) / P(lam, 2), P(r, 1) / P(lam, 1)
        return [
            [diag, z, z, z, z, z],
            [z, diag, z, z, z, z],
            [z, z, diag, z, z, z],
            [mix * b21, mix, z, d1, z, z],
            [z, p * mix, mix * b21, z, d1, z],
            [far2, far2, far2, far1, far1, one],
        ]
    raise ConfigError(f"no reference matrix for family {family!r}")


REFERENCE: Dict[tuple, Callable[..., Matrix]] = {
    (2, 1): six_vertex,
    (3, 2): _spin_two,
}


def reference_matrix(n: int, J: int, family: str, w, nu, q) -> Matrix:
    try:
        builder = REFERENCE[(n, J)]
    except KeyError:
        raise ConfigError(f"no reference matrices for n={n}, J={J}") from None
    return builder(family, w, nu, q)
