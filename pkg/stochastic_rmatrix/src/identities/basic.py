"""
Terminating basic hypergeometric summations, written as explicit finite sums.

Every identity is checked for all truncation orders up to the given limits;
the base of the series is the sampled q itself.
"""

import logging
from fractions import Fraction
from functools import reduce
from typing import Dict, Sequence

from ..exactnum.report import Budget, VerificationReport, Witness, compare_values
from ..exactnum.scalars import ipow
from ..qkit.indices import box, compositions, weight
from ..qkit.qseries import qpochhammer, qpochhammer_many

logger = logging.getLogger(__name__)

NUDGE = Fraction(1, 7)


def _prod(values):
    return reduce(lambda acc, v: acc * v, values, Fraction(1))


def _staircase(zs: Sequence, k) -> Fraction:
    """prod_j z_j^{sum_{i<j} k_i}."""
    value = Fraction(1)
    prefix = 0
    for z, kj in zip(zs, k):
        value = value * ipow(z, prefix)
        prefix += kj
    return value


def q_binomial_theorem(N: int, z, q):
    lhs = sum((qpochhammer(ipow(q, -N), q, k) / qpochhammer(q, q, k) * ipow(z, k) for k in range(N + 1)), Fraction(0))
    return lhs, qpochhammer(z * ipow(q, -N), q, N)


def q_vandermonde(N: int, a, c, q):
    lhs = Fraction(0)
    for k in range(N + 1):
        num = qpochhammer(a, q, k) * qpochhammer(ipow(q, -N), q, k)
        lhs = lhs + num / (qpochhammer(c, q, k) * qpochhammer(q, q, k)) * ipow(q, k)
    return lhs, qpochhammer(c / a, q, N) / qpochhammer(c, q, N) * ipow(a, N)


def pfaff_saalschutz(N: int, a, b, c, q):
    lhs = Fraction(0)
    d = a * b / c * ipow(q, 1 - N)
    for k in range(N + 1):
        num = qpochhammer_many([a, b, ipow(q, -N)], q, k)
        lhs = lhs + num / qpochhammer_many([c, d, q], q, k) * ipow(q, k)
    rhs = qpochhammer_many([c / a, c / b], q, N) / qpochhammer_many([c, c / (a * b)], q, N)
    return lhs, rhs


def pfaff_saalschutz_staircase(N: int, b, c, zs: Sequence, q):
    """Multidimensional extension with the z-staircase weights."""
    zprod = _prod(zs)
    lhs = Fraction(0)
    for total in range(N + 1):
        head = ipow(q, total) * qpochhammer_many([ipow(q, -N), b], q, total)
        head = head / qpochhammer_many([c, b / c * ipow(q, 1 - N) * zprod], q, total)
        for k in compositions(len(zs), total):
            inner = _staircase(zs, k)
            for z, kj in zip(zs, k):
                inner = inner * qpochhammer(z, q, kj) / qpochhammer(q, q, kj)
            lhs = lhs + head * inner
    rhs = qpochhammer_many([c / zprod, c / b], q, N) / qpochhammer_many([c, c / (b * zprod)], q, N)
    return lhs, rhs


def pfaff_saalschutz_multi(ns: Sequence[int], a, b, c, q):
    """Multidimensional extension with independent truncations q^{-n_i}."""
    total_n = sum(ns)
    lhs = Fraction(0)
    for k in box(len(ns), max(ns) if ns else 0):
        if any(ki > ni for ki, ni in zip(k, ns)):
            continue
        cross = sum(k[i] * ns[j] for j in range(len(ns)) for i in range(j))
        term = ipow(q, weight(k) - cross) * qpochhammer_many([a, b], q, weight(k))
        term = term / qpochhammer_many([c, a * b / c * ipow(q, 1 - total_n)], q, weight(k))
        for ki, ni in zip(k, ns):
            term = term * qpochhammer(ipow(q, -ni), q, ki) / qpochhammer(q, q, ki)
        lhs = lhs + term
    rhs = qpochhammer_many([c / a, c / b], q, total_n) / qpochhammer_many([c, c / (a * b)], q, total_n)
    return lhs, rhs


def staircase_summation(level: int, zs: Sequence, q):
    """sum over |k| = level of the staircase weights equals (prod z; q)_l / (q; q)_l."""
    lhs = Fraction(0)
    for k in compositions(len(zs), level):
        term = _staircase(zs, k)
        for z, kj in zip(zs, k):
            term = term * qpochhammer(z, q, kj) / qpochhammer(q, q, kj)
        lhs = lhs + term
    return lhs, qpochhammer(_prod(zs), q, level) / qpochhammer(q, q, level)


def _first_mismatch(cases, budget: Budget, label: str):
    for key, (lhs, rhs) in cases:
        if budget.perturb:
            lhs = lhs + NUDGE
        witness = compare_values(key, lhs, rhs)
        if witness is not None:
            witness.detail = label
            return witness
    return None


SUMMATION_SYMBOLS = ["q", "a", "b", "c", "z", "z1", "z2", "z3"]


def verify_appendixB(budget: Budget = Budget(), max_order: int = 4, max_dims: int = 3, max_cap: int = 3) -> Dict[str, VerificationReport]:
    """All basic summations for orders <= max_order, dimensions <= max_dims, caps <= max_cap."""

    def zs_of(p, m):
        return [p["z1"], p["z2"], p["z3"]][:m] if m <= 3 else [p["z1"]] * m

    checks = {
        "q-binomial": lambda p: _first_mismatch(
            (((N,), q_binomial_theorem(N, p["z"], p["q"])) for N in range(max_order + 1)), budget, "q-binomial theorem"),
        "q-vandermonde": lambda p: _first_mismatch(
            (((N,), q_vandermonde(N, p["a"], p["c"], p["q"])) for N in range(max_order + 1)), budget, "q-Vandermonde"),
        "pfaff-saalschutz": lambda p: _first_mismatch(
            (((N,), pfaff_saalschutz(N, p["a"], p["b"], p["c"], p["q"])) for N in range(max_order + 1)),
            budget, "Pfaff-Saalschutz"),
        "pfaff-saalschutz-staircase": lambda p: _first_mismatch(
            (((N, m), pfaff_saalschutz_staircase(N, p["b"], p["c"], zs_of(p, m), p["q"]))
             for m in range(1, max_dims + 1) for N in range(max_order + 1)),
            budget, "Pfaff-Saalschutz staircase extension"),
        "pfaff-saalschutz-multi": lambda p: _first_mismatch(
            ((ns, pfaff_saalschutz_multi(ns, p["a"], p["b"], p["c"], p["q"]))
             for m in range(1, max_dims + 1) for ns in box(m, max_cap)),
            budget, "Pfaff-Saalschutz multi-truncation extension"),
        "staircase-summation": lambda p: _first_mismatch(
            (((level, m), staircase_summation(level, zs_of(p, m), p["q"]))
             for m in range(1, max_dims + 1) for level in range(max_cap + 1)),
            budget, "staircase summation"),
    }
    return {name: budget.run(f"appendixB {name}", check, SUMMATION_SYMBOLS) for name, check in checks.items()}


def merged(reports: Dict[str, VerificationReport], identity: str) -> VerificationReport:
    out = VerificationReport(identity)
    for report in reports.values():
        out.merge(report)
    return out
