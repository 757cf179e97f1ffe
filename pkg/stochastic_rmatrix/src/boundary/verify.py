"""
Reflection-equation verifiers.

Boundary factories are callables factory(J, w, point) -> BoundaryMatrix so
that the same check can evaluate K at x, y, 1/y and so on. All spectral
parameters enter through their squares u = x^2, w = y^2.
"""

import logging
from typing import Callable, Dict, Optional, Sequence

from ..exactnum.report import Budget, VerificationReport, Witness, perturb_first
from ..exactnum.scalars import ipow
from ..qkit.basis import enumerate_basis
from ..qkit.indices import add, sub, unit
from ..rmat.operator import Operator, embed
from ..rmat.rmatrix import ModelConfig, build_Rtilde, build_S, build_S_nondiff, nondiff_space
from .golden import reference_matrix
from .kmatrix import (
    RIGHT_UPPER,
    STOCHASTIC_FAMILIES,
    BoundaryMatrix,
    build_K,
    build_K_nondiff,
    build_Kbar_nondiff,
    build_Ktilde,
    check_columns_stochastic,
    check_normalized,
    check_triangular,
    k_to_kbar,
    sigma_twist,
)
from .trace import kbar_from_ktilde_trace, ktilde_from_kbar_trace, lambda_scaled_left_upper, trace_built_kbar

logger = logging.getLogger(__name__)

Factory = Callable[[int, object, object], BoundaryMatrix]


def family_factory(n: int, family: str) -> Factory:
    def factory(J, w, p):
        return build_K(n, J, w, p["nu"], p["q"], family)
    return factory


def twisted_factory(n: int, family: str = RIGHT_UPPER, direction: str = "right", times: int = 1) -> Factory:
    """sigma-twisted family; the twist parameter is drawn as the symbol ``mu``."""
    def factory(J, w, p):
        K = build_K(n, J, w, p["nu"], p["q"], family)
        for _ in range(times):
            K = sigma_twist(K, p["mu"], direction)
        return K
    return factory


def kbar_factory(n: int, family: str = RIGHT_UPPER) -> Factory:
    """K-bar(y) = k_to_kbar(K(1/y))."""
    def factory(J, w, p):
        return k_to_kbar(build_K(n, J, 1 / w, p["nu"], p["q"], family))
    return factory


def dual_factory(n: int) -> Factory:
    def factory(J, u, p):
        return build_Ktilde(n, J, u, p["nu"], p["q"])
    return factory


def _sides(cfg: ModelConfig):
    space = cfg.space()

    def s12(arg, q):
        return build_S(cfg, arg, q)

    def s21(arg, q):
        return embed(build_S(cfg.swapped(), arg, q), space, (1, 0))

    def k1(K):
        return embed(K.op, space, (0,))

    def k2(K):
        return embed(K.op, space, (1,))

    return space, s12, s21, k1, k2


def reflection_sides(cfg: ModelConfig, KI_u, KJ_w, u, w, q):
    """Both sides of S12(x/y) K1(x) S21(xy) K2(y) = K2(y) S12(xy) K1(x) S21(x/y)."""
    _, s12, s21, k1, k2 = _sides(cfg)
    lhs = s12(u / w, q) @ k1(KI_u) @ s21(u * w, q) @ k2(KJ_w)
    rhs = k2(KJ_w) @ s12(u * w, q) @ k1(KI_u) @ s21(u / w, q)
    return lhs, rhs


def reflection_bar_sides(cfg: ModelConfig, KI_u, KJ_w, u, w, q):
    """S21(y/x) K1(x) S12(1/(xy)) K2(y) = K2(y) S21(1/(xy)) K1(x) S12(y/x)."""
    _, s12, s21, k1, k2 = _sides(cfg)
    lhs = s21(w / u, q) @ k1(KI_u) @ s12(1 / (u * w), q) @ k2(KJ_w)
    rhs = k2(KJ_w) @ s21(1 / (u * w), q) @ k1(KI_u) @ s12(w / u, q)
    return lhs, rhs


def dual_reflection_sides(cfg: ModelConfig, KI_u, KJ_w, u, w, q):
    """K2(y) St21(xy) K1(x) S21(y/x) = S12(y/x) K1(x) St12(xy) K2(y)."""
    space, s12, s21, k1, k2 = _sides(cfg)
    t21 = embed(build_Rtilde(cfg.swapped(), u * w, q), space, (1, 0))
    t12 = build_Rtilde(cfg, u * w, q)
    lhs = k2(KJ_w) @ t21 @ k1(KI_u) @ s21(w / u, q)
    rhs = s12(w / u, q) @ k1(KI_u) @ t12 @ k2(KJ_w)
    return lhs, rhs


def _run_reflection(name, sides, cfg, factory_I, factory_J, budget, extra_symbols):
    def check(p):
        u, w, q = p["u"], p["w"], p["q"]
        lhs, rhs = sides(cfg, factory_I(cfg.I, u, p), factory_J(cfg.J, w, p), u, w, q)
        return perturb_first(lhs, budget).compare(rhs, name)

    symbols = ["q", "nu", "u", "w"] + list(extra_symbols)
    return budget.run(f"{name} n={cfg.n} I={cfg.I} J={cfg.J}", check, symbols)


def verify_reflection(cfg: ModelConfig, factory_I: Factory, factory_J: Optional[Factory] = None,
                      budget: Budget = Budget(), extra_symbols: Sequence[str] = ()) -> VerificationReport:
    return _run_reflection("reflection", reflection_sides, cfg, factory_I, factory_J or factory_I, budget, extra_symbols)


def verify_reflection_bar(cfg: ModelConfig, factory_I: Factory, factory_J: Optional[Factory] = None,
                          budget: Budget = Budget(), extra_symbols: Sequence[str] = ()) -> VerificationReport:
    return _run_reflection("reflection-bar", reflection_bar_sides, cfg, factory_I, factory_J or factory_I, budget, extra_symbols)


def verify_dual_reflection(cfg: ModelConfig, factory_I: Optional[Factory] = None, factory_J: Optional[Factory] = None,
                           budget: Budget = Budget()) -> VerificationReport:
    factory_I = factory_I or dual_factory(cfg.n)
    return _run_reflection("dual-reflection", dual_reflection_sides, cfg, factory_I, factory_J or factory_I, budget, ())


# structure -----------------------------------------------------------------

def verify_family_structure(n: int, J: int, family: str, budget: Budget = Budget()) -> VerificationReport:
    """Unit column sums, triangularity and K(w=1) = identity."""

    def check(p):
        K = build_K(n, J, p["w"], p["nu"], p["q"], family)
        K = K.with_op(perturb_first(K.op, budget))
        witness = check_columns_stochastic(K) or check_triangular(K)
        if witness is not None:
            return witness
        return check_normalized(build_K(n, J, 1, p["nu"], p["q"], family))

    return budget.run(f"structure {family} n={n} J={J}", check, ["q", "nu", "w"])


def verify_reference_matrices(n: int, J: int, budget: Budget = Budget(),
                              families: Sequence[str] = STOCHASTIC_FAMILIES) -> VerificationReport:
    """Builders reproduce the explicitly written-out matrices."""

    def check(p):
        w, nu, q = p["w"], p["nu"], p["q"]
        for family in families:
            built = perturb_first(build_K(n, J, w, nu, q, family).op, budget)
            expected = Operator.from_dense(built.space, reference_matrix(n, J, family, w, nu, q))
            witness = built.compare(expected, f"{family} reference")
            if witness is not None:
                return witness
        return None

    return budget.run(f"reference matrices n={n} J={J}", check, ["q", "nu", "w"])


# recurrences -----------------------------------------------------------------

def _shift(a, plus: int = 0, minus: int = 0):
    """a + e_plus - e_minus (index 0 means no shift)."""
    m = len(a)
    out = a
    if plus:
        out = add(out, unit(m, plus))
    if minus:
        out = sub(out, unit(m, minus))
    return out


def recurrence_residuals(K: BoundaryMatrix):
    """Yield (label, j, l, residual) for the three recurrence families."""
    n, J = K.n, K.J
    w, nu, q = K.params["w"], K.params["nu"], K.params["q"]
    m = n - 1
    at = K.at
    basis = enumerate_basis(n, J).indices
    for j in basis:
        for l in basis:
            first = (nu * (1 - ipow(q, 2 * l[0])) * at(j, _shift(l, minus=1))
                     - ipow(q, -J) * w * (ipow(q, 2 * j[0]) - ipow(q, 2 * l[0])) * at(j, l)
                     - nu * w * w * (1 - ipow(q, 2 * j[0] + 2)) * at(_shift(j, plus=1), l))
            yield "first", j, l, first
            for i in range(1, m):
                sl, sj = sum(l[:i]), sum(j[:i])
                value = (ipow(q, -2 * sl) - ipow(q, -2 * sj)) * at(j, l)
                for k in range(1, i + 1):
                    pl, pj = sum(l[:k]), sum(j[:k])
                    value = value - ipow(q, -2 * pl) * (1 - ipow(q, 2 * l[k - 1])) * at(j, _shift(l, plus=i + 1, minus=k))
                    value = value + ipow(q, -2) * ipow(q, -2 * pj) * (1 - ipow(q, 2 + 2 * j[k - 1])) * at(_shift(j, plus=k, minus=i + 1), l)
                yield f"middle[{i}]", j, l, value
            jl, ll = j[m - 1], l[m - 1]
            last = ((ipow(q, -2 * jl) - ipow(q, -2 * ll)) * at(j, l)
                    - (1 - ipow(q, -2 * ll)) * at(j, _shift(l, minus=m))
                    + (1 - ipow(q, -2 - 2 * jl)) * at(_shift(j, plus=m), l))
            yield "last", j, l, last


def check_recurrences(K: BoundaryMatrix) -> Optional[Witness]:
    for label, j, l, residual in recurrence_residuals(K):
        if residual != 0:
            return Witness((j, l), str(residual), "0", f"{label} recurrence")
    return None


def verify_recurrences(n: int, J: int, family: str = RIGHT_UPPER, budget: Budget = Budget()) -> VerificationReport:
    def check(p):
        K = build_K(n, J, p["w"], p["nu"], p["q"], family)
        return check_recurrences(K.with_op(perturb_first(K.op, budget)))

    return budget.run(f"recurrences {family} n={n} J={J}", check, ["q", "nu", "w"])


# trace maps ------------------------------------------------------------------

def verify_trace_roundtrip(n: int, J: int, budget: Budget = Budget()) -> VerificationReport:
    """K-tilde -> K-bar -> K-tilde returns the input."""
    cfg = ModelConfig(n, J, J)

    def check(p):
        u, nu, q = p["u"], p["nu"], p["q"]
        ktilde = build_Ktilde(n, J, u, nu, q)
        kbar_inv = kbar_from_ktilde_trace(ktilde, cfg, 1 / u, q)
        back = ktilde_from_kbar_trace(kbar_inv, cfg, u, q)
        return perturb_first(back.op, budget).compare(ktilde.op, "trace round trip")

    return budget.run(f"trace round trip n={n} J={J}", check, ["q", "nu", "u"])


def verify_trace_lambda(n: int, J: int, budget: Budget = Budget()) -> VerificationReport:
    """Trace-built K-bar equals lambda_J^(n)(x) times the closed-form left-upper K-bar."""
    notes: Dict[str, str] = {}

    def check(p):
        u, nu, q = p["u"], p["nu"], p["q"]
        built = perturb_first(trace_built_kbar(n, J, u, nu, q).op, budget)
        expected = lambda_scaled_left_upper(n, J, u, nu, q)
        witness = built.compare(expected, "trace-built K-bar vs lambda * closed form")
        if witness is not None:
            ratio = _constant_ratio(built, expected)
            if ratio is not None:
                notes["constant_ratio"] = str(ratio)
        return witness

    report = budget.run(f"trace lambda n={n} J={J}", check, ["q", "nu", "u"])
    report.notes.update(notes)
    report.notes["lambda"] = "lambda_J^(n)(x) with u = x^2"
    return report


def _constant_ratio(a: Operator, b: Operator):
    """a = c * b for a single scalar c, or None."""
    ratio = None
    for r, c, v in b.entries():
        current = a.entry(r, c) / v
        if ratio is None:
            ratio = current
        elif current != ratio:
            return None
    return ratio


# non-difference model --------------------------------------------------------

def verify_reflection_nondiff(n: int, sector_cap: int, budget: Budget = Budget()) -> VerificationReport:
    """S12(x,y) K1(x,xb) S21(y,xb) K2(y,yb) = K2(y,yb) S12(x,yb) K1(x,xb) S21(yb,xb)."""
    space = nondiff_space(n, sector_cap)

    def check(p):
        x, xb, y, yb, z, q2 = p["x"], p["xb"], p["y"], p["yb"], p["z"], p["q"] * p["q"]

        def s12(a, b):
            return build_S_nondiff(n, a, b, q2, sector_cap)

        def s21(a, b):
            return embed(build_S_nondiff(n, a, b, q2, sector_cap), space, (1, 0))

        k1 = embed(build_K_nondiff(n, x, xb, z, q2, sector_cap).op, space, (0,))
        k2 = embed(build_K_nondiff(n, y, yb, z, q2, sector_cap).op, space, (1,))
        lhs = s12(x, y) @ k1 @ s21(y, xb) @ k2
        rhs = k2 @ s12(x, yb) @ k1 @ s21(yb, xb)
        return perturb_first(lhs, budget).compare(rhs, "non-difference reflection")

    return budget.run(f"nondiff reflection n={n} cap={sector_cap}", check, ["q", "x", "xb", "y", "yb", "z"])


def verify_reflection_nondiff_bar(n: int, sector_cap: int, budget: Budget = Budget()) -> VerificationReport:
    """S21(y,x) Kb1(x,xb) S12(xb,y) Kb2(y,yb) = Kb2(y,yb) S21(yb,x) Kb1(x,xb) S12(xb,yb)."""
    space = nondiff_space(n, sector_cap)

    def check(p):
        x, xb, y, yb, q2 = p["x"], p["xb"], p["y"], p["yb"], p["q"] * p["q"]

        def s12(a, b):
            return build_S_nondiff(n, a, b, q2, sector_cap)

        def s21(a, b):
            return embed(build_S_nondiff(n, a, b, q2, sector_cap), space, (1, 0))

        k1 = embed(build_Kbar_nondiff(n, x, xb, q2, sector_cap).op, space, (0,))
        k2 = embed(build_Kbar_nondiff(n, y, yb, q2, sector_cap).op, space, (1,))
        lhs = s21(y, x) @ k1 @ s12(xb, y) @ k2
        rhs = k2 @ s21(yb, x) @ k1 @ s12(xb, yb)
        return perturb_first(lhs, budget).compare(rhs, "non-difference reflection (bar)")

    return budget.run(f"nondiff reflection-bar n={n} cap={sector_cap}", check, ["q", "x", "xb", "y", "yb"])


def verify_nondiff_stochastic(n: int, sector_cap: int, budget: Budget = Budget()) -> VerificationReport:
    """At xbar = x the non-difference K has unit column sums."""

    def check(p):
        K = build_K_nondiff(n, p["x"], p["x"], p["z"], p["q"] * p["q"], sector_cap)
        return check_columns_stochastic(K.with_op(perturb_first(K.op, budget)))

    return budget.run(f"nondiff stochastic n={n} cap={sector_cap}", check, ["q", "x", "z"])
