"""
q-Pochhammer symbols, q-binomials and the weight functions Phi, Phi-hat and V.

All functions accept Fraction or DualScalar arguments; the base q is always
an exact rational.
"""

from fractions import Fraction
from typing import Sequence

from ..exactnum.errors import PoleEncountered
from ..exactnum.scalars import ipow
from .indices import MultiIndex, geq, qform_Q, sub, weight, _same_length

ONE = Fraction(1)


def _nonzero(value, what: str):
    if value == 0:
        raise PoleEncountered(f"{what} vanishes")
    return value


def qpochhammer(x, q, k: int):
    """(x; q)_k for any integer k."""
    if k == 0:
        return ONE
    result = ONE
    if k > 0:
        for j in range(k):
            result = result * (1 - x * ipow(q, j))
        return result
    for j in range(-k):
        factor = 1 - x * ipow(q, k + j)
        result = result / _nonzero(factor, f"(x;q)_{k} factor {j}")
    return result


def qpochhammer_many(values: Sequence, q, k: int):
    """(a, b, ...; q)_k = (a; q)_k (b; q)_k ..."""
    result = ONE
    for x in values:
        result = result * qpochhammer(x, q, k)
    return result


def qbinomial(m: int, k: int, q) -> Fraction:
    if k < 0 or k > m:
        return Fraction(0)
    num = qpochhammer(q, q, m)
    den = qpochhammer(q, q, k) * qpochhammer(q, q, m - k)
    return num / _nonzero(den, "q-binomial denominator")


def cancelled_ratio(num_args: Sequence, den_args: Sequence, what: str):
    """prod(1 - a) / prod(1 - d) with equal arguments removed from both sides."""
    den = list(den_args)
    result = ONE
    for a in num_args:
        match = next((k for k, d in enumerate(den) if d == a), None)
        if match is None:
            result = result * (1 - a)
        else:
            del den[match]
    for d in den:
        result = result / _nonzero(1 - d, what)
    return result


def phi(gamma: MultiIndex, beta: MultiIndex, lam, mu, q):
    """Phi_q(gamma | beta; lambda, mu); zero unless gamma <= beta.

    (lambda; q)_|gamma| / (mu; q)_|beta| is taken with common factors cancelled:
    when mu/lambda is held fixed, as in the R-matrix, lambda q^k = mu q^l is an
    identity in the spectral parameter and the 0/0 it produces is removable.
    """
    _same_length(gamma, beta)
    if not geq(beta, gamma) or any(g < 0 for g in gamma):
        return Fraction(0)
    g, b = weight(gamma), weight(beta)
    ratio = mu / _nonzero(lam, "lambda")
    value = ipow(q, qform_Q(sub(beta, gamma), gamma)) * ipow(ratio, g)
    value = value * qpochhammer(ratio, q, b - g)
    lam_args = [lam * ipow(q, k) for k in range(g)]
    mu_args = [mu * ipow(q, k) for k in range(b)]
    value = value * cancelled_ratio(lam_args, mu_args, "(mu; q)_|beta|")
    for gs, bs in zip(gamma, beta):
        value = value * qbinomial(bs, gs, q)
    return value


def phi_hat(gamma: MultiIndex, beta: MultiIndex, lam, mu, q):
    return ipow(q, qform_Q(gamma, beta) - qform_Q(beta, gamma)) * phi(gamma, beta, lam, mu, q)


def v_func(x, q, a: MultiIndex, b: MultiIndex):
    """Ising-type weight V_x(a, b); zero unless a >= b componentwise."""
    _same_length(a, b)
    if not geq(a, b):
        return Fraction(0)
    q2 = q * q
    k = weight(a) - weight(b)
    value = ipow(q, 2 * qform_Q(a, b) - qform_Q(a, a) - qform_Q(b, b))
    value = value * ipow(q / _nonzero(x, "x"), k) * qpochhammer(x * x, q2, k)
    for ai, bi in zip(a, b):
        value = value / _nonzero(qpochhammer(q2, q2, ai - bi), "(q^2; q^2)")
    return value


def lambda_function(n: int, J: int, u, nu, q):
    """Scalar relating the trace-built left boundary to its closed form (u = x^2)."""
    q2 = q * q
    inv_u = 1 / _nonzero(u, "u")
    num = qpochhammer(inv_u * inv_u * ipow(q, 2 * J + 2), q2, n - 1)
    num = num * qpochhammer(nu * inv_u * ipow(q, 2 - J), q2, n - 1)
    den = qpochhammer(inv_u * inv_u * q2, q2, n - 1)
    den = den * qpochhammer(nu * inv_u * ipow(q, J + 2), q2, n - 1)
    return num / _nonzero(den, "lambda denominator")


def mu_function(n: int, J: int, y, z, q):
    """Normalization of the first V summation (y, z unsquared)."""
    q2 = q * q
    z2 = z * z
    ratio = z2 / _nonzero(y * y, "y")
    num = qpochhammer(ipow(q, 2 - 2 * n) * z2, q2, n - 1)
    num = num * qpochhammer(ipow(q, 2 * J - 2 * n + 2) * ratio, q2, n - 1)
    den = qpochhammer(ipow(q, 2 * J - 2 * n + 2) * z2, q2, n - 1)
    den = den * qpochhammer(ipow(q, 2 - 2 * n) * ratio, q2, n - 1)
    return num / _nonzero(den, "mu denominator")
