"""
Identities among the V-functions: the star-star relation, the two
summations behind the left-boundary trace map, and orthogonality.

Each ``*_sides`` function returns the exact (lhs, rhs) pair for one tuple
of external indices; the verifiers sweep an IndexRange.
"""

import logging
from fractions import Fraction
from typing import Callable, Iterable, Optional, Tuple

from ..exactnum.report import Budget, VerificationReport, Witness, compare_values
from ..exactnum.scalars import ipow
from ..qkit.indices import add, between, compositions, sub, weight
from ..qkit.qseries import mu_function, v_func
from .lattice import IndexRange

logger = logging.getLogger(__name__)

NUDGE = Fraction(1, 7)


def star_star_sides(a, b, c, d, x, xp, y, yp, q):
    V = lambda s, i, j: v_func(s, q, i, j)
    lower = tuple(max(p, r) for p, r in zip(b, c))
    lhs = Fraction(0)
    for m in between(lower, a):
        lhs = lhs + V(x / yp, a, m) * V(yp / xp, m, b) * V(y / x, m, c) / V(y / xp, m, d)
    lhs = lhs * V(y / yp, b, d) / V(y / yp, a, c)
    upper = tuple(min(p, r) for p, r in zip(b, c))
    rhs = Fraction(0)
    for m in between(d, upper):
        rhs = rhs + V(x / yp, m, d) * V(yp / xp, c, m) * V(y / x, b, m) / V(y / xp, a, m)
    rhs = rhs * V(x / xp, a, b) / V(x / xp, c, d)
    return lhs, rhs


def sum2_sides(a, b, c, x, xp, y, yp, q):
    V = lambda s, i, j: v_func(s, q, i, j)
    upper = tuple(min(p, r) for p, r in zip(b, c))
    total = Fraction(0)
    for m in between(a, upper):
        total = total + V(x / yp, m, a) * V(yp / xp, b, m) * V(y / x, c, m) / V(y / xp, c, m)
    lhs = V(y / yp, c, b) / V(y / yp, c, a) * total
    rhs = V(x / xp, b, a) * V(y / x, c, b) / V(y / xp, c, a)
    return lhs, rhs


def sum2_inner(a, b, c, x, xp, y, yp, q):
    """The bare m-sum of the second summation."""
    V = lambda s, i, j: v_func(s, q, i, j)
    upper = tuple(min(p, r) for p, r in zip(b, c))
    total = Fraction(0)
    for m in between(a, upper):
        total = total + V(x / yp, m, a) * V(yp / xp, b, m) * V(y / x, c, m) / V(y / xp, c, m)
    return total


def _sum1_weight(d, c, n: int, q):
    expo = -2 * sum(k * (dk - ck) for k, (dk, ck) in enumerate(zip(d, c), start=1)) + n * (weight(d) - weight(c))
    return ipow(q, expo)


def sum1_sides(n: int, J: int, m, b, c, y, z, q):
    """First summation: d runs over d >= c with |d| - |b| <= J."""
    V = lambda s, i, j: v_func(s, q, i, j)
    qJ = ipow(q, -J)
    lhs = Fraction(0)
    for extra in range(J + weight(b) - weight(c) + 1):
        for e in compositions(len(c), extra):
            d = add(c, e)
            term = V(qJ, d, b) * V(y, d, c) / (V(z, d, b) * V(y / z * ipow(q, n - J), d, m))
            lhs = lhs + _sum1_weight(d, c, n, q) * term
    qn = ipow(q, n)
    rhs = mu_function(n, J, y, z, q) * V(qJ, c, b) * V(qn / z, b, m)
    rhs = rhs / (V(y * qn / z, b, m) * V(z / y, c, b) * V(ipow(q, n - J) / z, c, m))
    return lhs, rhs


def orthogonality_sides(a, b, x, y, q):
    lhs = Fraction(0)
    for m in between(b, a):
        lhs = lhs + ipow(x, weight(m) - weight(b)) * ipow(y, weight(m) - weight(a)) * v_func(x, q, a, m) * v_func(y, q, m, b)
    return lhs, v_func(x * y, q, a, b)


def _sweep(tuples: Iterable[Tuple], sides: Callable, budget: Budget, label: str) -> Optional[Witness]:
    for key in tuples:
        lhs, rhs = sides(*key)
        if budget.perturb:
            lhs = lhs + NUDGE
        witness = compare_values(key, lhs, rhs)
        if witness is not None:
            witness.detail = label
            return witness
    return None


def verify_star_star(m: int, cap: int, budget: Budget = Budget()) -> VerificationReport:
    lattice = IndexRange(m, cap)

    def check(p):
        args = (p["x"], p["xp"], p["y"], p["yp"], p["q"])
        return _sweep(lattice.star_quadruples(), lambda a, b, c, d: star_star_sides(a, b, c, d, *args), budget, "star-star")

    return budget.run(f"star-star m={m} cap={cap}", check, ["q", "x", "xp", "y", "yp"])


def verify_sum2(m: int, cap: int, budget: Budget = Budget()) -> VerificationReport:
    lattice = IndexRange(m, cap)

    def check(p):
        args = (p["x"], p["xp"], p["y"], p["yp"], p["q"])
        return _sweep(lattice.wedge_triples(), lambda a, b, c: sum2_sides(a, b, c, *args), budget, "second summation")

    return budget.run(f"sum2 m={m} cap={cap}", check, ["q", "x", "xp", "y", "yp"])


def verify_sum2_from_star_star(m: int, cap: int, budget: Budget = Budget()) -> VerificationReport:
    """The m-sum of the second summation is V_{x/x'}(b,a) times the star-star RHS at (c, c, b, a)."""
    lattice = IndexRange(m, cap)

    def sides(a, b, c, x, xp, y, yp, q):
        _, star_rhs = star_star_sides(c, c, b, a, x, xp, y, yp, q)
        return sum2_inner(a, b, c, x, xp, y, yp, q), v_func(x / xp, q, b, a) * star_rhs

    def check(p):
        args = (p["x"], p["xp"], p["y"], p["yp"], p["q"])
        return _sweep(lattice.chains(3), lambda a, b, c: sides(a, b, c, *args), budget, "star-star specialization")

    return budget.run(f"sum2 via star-star m={m} cap={cap}", check, ["q", "x", "xp", "y", "yp"])


def verify_sum1(n: int, J: int, cap: int, budget: Budget = Budget()) -> VerificationReport:
    lattice = IndexRange(n - 1, cap)

    def check(p):
        return _sweep(lattice.chains(3), lambda m, b, c: sum1_sides(n, J, m, b, c, p["y"], p["z"], p["q"]), budget, "first summation")

    return budget.run(f"sum1 n={n} J={J} cap={cap}", check, ["q", "y", "z"])


def verify_orthogonality(m: int, cap: int, budget: Budget = Budget()) -> VerificationReport:
    lattice = IndexRange(m, cap)

    def check(p):
        return _sweep(lattice.chains(2), lambda b, a: orthogonality_sides(a, b, p["x"], p["y"], p["q"]), budget, "orthogonality")

    return budget.run(f"orthogonality m={m} cap={cap}", check, ["q", "x", "y"])
