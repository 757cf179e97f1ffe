"""
Closed-form L-operators S_{1,J}(x) and S_{J,1}(x).

The fundamental factor V_1 has basis e_0 = 0, e_1, ..., e_{n-1}; alpha below is
the label of e_alpha and j_0 is read as 0.
"""

from fractions import Fraction

from ..exactnum.errors import ConfigError
from ..exactnum.scalars import ipow
from ..qkit.basis import enumerate_basis
from ..qkit.indices import add, weight
from .operator import Operator, TensorSpace
from .rmatrix import conserving_rows

FIRST = "first"
SECOND = "second"


def _label(e) -> int:
    return 0 if not any(e) else e.index(1) + 1


def _comp(j, alpha: int) -> int:
    return 0 if alpha == 0 else j[alpha - 1]


def _delta(a: int, b: int) -> int:
    return int(a == b)


def l_first_entry(n: int, J: int, ea, j, eb, l, u, q):
    """[S_{1,J}(x)]_{e_alpha, j}^{e_beta, l}."""
    alpha, beta = _label(ea), _label(eb)
    if add(j, ea) != add(l, eb):
        return Fraction(0)
    den = 1 - ipow(q, -1 - J) / u
    ja = _comp(j, alpha)
    if alpha == beta:
        expo = 2 * int(alpha > 0) * (sum(j[:alpha]) - J)
        num = 1 - ipow(q, J - 1 - 2 * ja - 2 * _delta(alpha, 0) * (J - weight(j))) / u
        return ipow(q, expo) * num / den
    if alpha > beta:
        expo = 2 * (sum(j[:alpha - 1]) - J - 1) + _delta(beta, 0) * (J + 1)
        factor = ipow(u, -_delta(beta, 0))
        return -ipow(q, expo) * factor * (1 - ipow(q, 2 + 2 * ja)) / den
    expo = 2 * sum(j[:max(alpha - 1, 0)]) - 1 - J - _delta(alpha, 0) * (J + 1 - 2 * weight(j))
    factor = ipow(u, -int(alpha > 0))
    return -ipow(q, expo) * factor * (1 - ipow(q, 2 * (1 + ja + _delta(alpha, 0) * (J - weight(j))))) / den


def l_second_entry(n: int, J: int, j, ea, l, eb, u, q):
    """[S_{J,1}(x)]_{j, e_alpha}^{l, e_beta}."""
    alpha, beta = _label(ea), _label(eb)
    if add(j, ea) != add(l, eb):
        return Fraction(0)
    den = 1 - ipow(q, -1 - J) / u
    ja = _comp(j, alpha)
    if alpha == beta:
        tail = sum(j[alpha - 1:]) if alpha > 0 else 0
        expo = -2 * weight(j) + 2 * int(alpha > 0) * tail
        num = 1 - ipow(q, J - 1 - 2 * ja - 2 * _delta(alpha, 0) * (J - weight(j))) / u
        return ipow(q, expo) * num / den
    if alpha > beta:
        expo = -1 + J - _delta(beta, 0) * (1 + J) - 2 * sum(j[:alpha])
        factor = ipow(u, -int(beta > 0))
        return -ipow(q, expo) * factor * (1 - ipow(q, 2 + 2 * ja)) / den
    expo = -2 + _delta(alpha, 0) * (1 - J) - 2 * int(alpha > 0) * sum(j[:alpha])
    factor = ipow(u, -_delta(alpha, 0))
    return -ipow(q, expo) * factor * (1 - ipow(q, 2 + 2 * ja + 2 * _delta(alpha, 0) * (J - weight(j)))) / den


def build_L(n: int, J: int, side: str, u, q) -> Operator:
    """L-operator with the fundamental representation on the ``side`` factor."""
    fundamental, spin = enumerate_basis(n, 1), enumerate_basis(n, J)
    if side == FIRST:
        space = TensorSpace.of(fundamental, spin)
        entry = lambda row, col: l_first_entry(n, J, row[0], row[1], col[0], col[1], u, q)
    elif side == SECOND:
        space = TensorSpace.of(spin, fundamental)
        entry = lambda row, col: l_second_entry(n, J, row[0], row[1], col[0], col[1], u, q)
    else:
        raise ConfigError(f"side must be {FIRST!r} or {SECOND!r}, got {side!r}")
    return Operator.from_function(space, entry, conserving_rows(space))
