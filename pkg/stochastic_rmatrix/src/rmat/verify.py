"""
Verifiers for the R-matrix identities: Yang–Baxter, unitarity, crossing
unitarity, regularity, the index symmetries, the modified Yang–Baxter forms
and the non-difference R-matrix relations.

Each verifier evaluates both sides exactly at random rational points.
"""

import logging
from fractions import Fraction
from typing import Callable, Dict, Optional

from ..exactnum.report import Budget, VerificationReport, Witness, compare_values, perturb_first
from ..exactnum.scalars import ipow
from ..qkit.basis import enumerate_basis
from ..qkit.indices import bracket, reverse_tau, rotate_sigma, weight, zero
from ..qkit.qseries import phi, v_func
from .loperators import FIRST, SECOND, build_L
from .operator import Operator, TensorSpace, embed
from .rmatrix import (
    ModelConfig,
    build_M,
    build_P,
    build_Rbar,
    build_Rtilde,
    build_S,
    build_S_nondiff,
    crossing_argument,
    crossing_g,
    nondiff_space,
)

logger = logging.getLogger(__name__)


def _entrywise(space: TensorSpace, lhs: Callable, rhs: Callable, label: str) -> Optional[Witness]:
    for row in space.states:
        for col in space.states:
            witness = compare_values((row, col), lhs(row, col), rhs(row, col))
            if witness is not None:
                witness.detail = label
                return witness
    return None


def _sector_note(op: Operator) -> Dict[str, str]:
    sectors = op.sectors()
    largest = max(sectors.items(), key=lambda kv: len(kv[1]))
    return {"sectors": str(len(sectors)), "max_sector": f"{largest[0]} (size {len(largest[1])})"}


def verify_ybe(n: int, I: int, J: int, K: int, budget: Budget = Budget()) -> VerificationReport:
    """S_IJ(x/y) S_IK(x/z) S_JK(y/z) = S_JK(y/z) S_IK(x/z) S_IJ(x/y) on V_I⊗V_J⊗V_K."""
    space = TensorSpace.of(enumerate_basis(n, I), enumerate_basis(n, J), enumerate_basis(n, K))
    notes: Dict[str, str] = {}

    def check(p):
        u1, u2, u3, q = p["u1"], p["u2"], p["u3"], p["q"]
        s12 = embed(build_S(ModelConfig(n, I, J), u1 / u2, q), space, (0, 1))
        s13 = embed(build_S(ModelConfig(n, I, K), u1 / u3, q), space, (0, 2))
        s23 = embed(build_S(ModelConfig(n, J, K), u2 / u3, q), space, (1, 2))
        lhs = perturb_first(s12 @ s13 @ s23, budget)
        notes.update(_sector_note(lhs))
        return lhs.compare(s23 @ s13 @ s12, "Yang-Baxter")

    report = budget.run(f"ybe n={n} (I,J,K)=({I},{J},{K})", check, ["q", "u1", "u2", "u3"])
    report.notes.update(notes)
    return report


def verify_unitarity(cfg: ModelConfig, budget: Budget = Budget()) -> VerificationReport:
    """S_{I,J}(x) S_{J,I}(1/x) = Id (unitarity scalar exactly 1)."""
    space = cfg.space()

    def check(p):
        u, q = p["u"], p["q"]
        prod = build_S(cfg, u, q) @ embed(build_S(cfg.swapped(), 1 / u, q), space, (1, 0))
        return perturb_first(prod, budget).compare(Operator.identity(space), "unitarity")

    return budget.run(f"unitarity n={cfg.n} I={cfg.I} J={cfg.J}", check, ["q", "u"])


def crossing_product(cfg: ModelConfig, u, q) -> Operator:
    """M_1 S^{t1}(x) M_1^{-1} S_21^{t1}((q^n x)^{-1}) on V_I ⊗ V_J."""
    space = cfg.space()
    m1 = embed(build_M(cfg.n, cfg.I, q), space, (0,))
    m1_inv = Operator.diagonal(space, lambda s: 1 / m1.at(s, s))
    s12 = build_S(cfg, u, q).partial_transpose(0)
    s21 = embed(build_S(cfg.swapped(), crossing_argument(cfg, u, q), q), space, (1, 0)).partial_transpose(0)
    return m1 @ s12 @ m1_inv @ s21


def verify_crossing(cfg: ModelConfig, budget: Budget = Budget()) -> VerificationReport:
    space = cfg.space()

    def check(p):
        u, q = p["u"], p["q"]
        lhs = perturb_first(crossing_product(cfg, u, q), budget)
        return lhs.compare(Operator.identity(space, crossing_g(cfg, u, q)), "crossing unitarity")

    return budget.run(f"crossing n={cfg.n} I={cfg.I} J={cfg.J}", check, ["q", "u"])


def verify_regularity(n: int, I: int, budget: Budget = Budget()) -> VerificationReport:
    """S_{I,I}(1) = P."""
    cfg = ModelConfig(n, I, I)

    def check(p):
        S = perturb_first(build_S(cfg, Fraction(1), p["q"]), budget)
        return S.compare(build_P(cfg.space()), "regularity")

    return budget.run(f"regularity n={n} I={I}", check, ["q"])


def verify_stochastic(cfg: ModelConfig, budget: Budget = Budget()) -> VerificationReport:
    """Every column of S sums to 1."""

    def check(p):
        S = perturb_first(build_S(cfg, p["u"], p["q"]), budget)
        for c, total in enumerate(S.column_sums()):
            if total != 1:
                return Witness((S.space.states[c],), str(total), "1", "column sum")
        return None

    return budget.run(f"stochastic n={cfg.n} I={cfg.I} J={cfg.J}", check, ["q", "u"])


def verify_m_invariance(cfg: ModelConfig, budget: Budget = Budget()) -> VerificationReport:
    """[M ⊗ M, S(x)] = 0."""
    space = cfg.space()

    def check(p):
        u, q = p["u"], p["q"]
        mm = embed(build_M(cfg.n, cfg.I, q), space, (0,)) @ embed(build_M(cfg.n, cfg.J, q), space, (1,))
        S = build_S(cfg, u, q)
        return perturb_first(mm @ S, budget).compare(S @ mm, "M-invariance")

    return budget.run(f"M-invariance n={cfg.n} I={cfg.I} J={cfg.J}", check, ["q", "u"])


def verify_rtilde_methods(cfg: ModelConfig, budget: Budget = Budget()) -> VerificationReport:
    """Partial-transpose inversion and the crossing formula give the same R-tilde."""

    def check(p):
        u, q = p["u"], p["q"]
        direct = perturb_first(build_Rtilde(cfg, u, q, "transpose-inverse"), budget)
        return direct.compare(build_Rtilde(cfg, u, q, "crossing"), "R-tilde methods")

    return budget.run(f"R-tilde n={cfg.n} I={cfg.I} J={cfg.J}", check, ["q", "u"])


def verify_l_operators(n: int, J: int, budget: Budget = Budget()) -> VerificationReport:
    """Closed-form L-operators agree with S_{1,J} and S_{J,1} built from the general sum."""

    def check(p):
        u, q = p["u"], p["q"]
        first = perturb_first(build_L(n, J, FIRST, u, q), budget)
        witness = first.compare(build_S(ModelConfig(n, 1, J), u, q), "L-operator S_{1,J}")
        if witness is not None:
            return witness
        return build_L(n, J, SECOND, u, q).compare(build_S(ModelConfig(n, J, 1), u, q), "L-operator S_{J,1}")

    return budget.run(f"l-operators n={n} J={J}", check, ["q", "u"])


def verify_modified_ybe(n: int, J: int = 1, budget: Budget = Budget()) -> VerificationReport:
    """R12(x) R~23(y) R~13(xy) = R~13(xy) R~23(y) R12(x) and
    R~21(x) R~31(x/y) R23(y) = R23(y) R~31(x/y) R~21(x), all spins equal to J."""
    cfg = ModelConfig(n, J, J)
    V = enumerate_basis(n, J)
    space = TensorSpace.of(V, V, V)

    def check(p):
        u1, u2, q = p["u1"], p["u2"], p["q"]
        r12 = embed(build_S(cfg, u1, q), space, (0, 1))
        t23 = embed(build_Rtilde(cfg, u2, q), space, (1, 2))
        t13 = embed(build_Rtilde(cfg, u1 * u2, q), space, (0, 2))
        witness = perturb_first(r12 @ t23 @ t13, budget).compare(t13 @ t23 @ r12, "modified YBE (first form)")
        if witness is not None:
            return witness
        t21 = embed(build_Rtilde(cfg, u1, q), space, (1, 0))
        t31 = embed(build_Rtilde(cfg, u1 / u2, q), space, (2, 0))
        r23 = embed(build_S(cfg, u2, q), space, (1, 2))
        return (t21 @ t31 @ r23).compare(r23 @ t31 @ t21, "modified YBE (second form)")

    return budget.run(f"modified-ybe n={n} J={J}", check, ["q", "u1", "u2"])


# symmetries -------------------------------------------------------------------

def _tau_pair(state):
    i, j = state
    return (reverse_tau(j), reverse_tau(i))


def _lhs(op: Operator, perturb: bool) -> Operator:
    return perturb_first(op, Budget(perturb=perturb))


def check_first_symmetry(cfg: ModelConfig, x, q, perturb: bool = False) -> Optional[Witness]:
    rbar = build_Rbar(cfg, x, q)
    mirror = build_Rbar(cfg.swapped(), x, q)
    lhs = _lhs(rbar, perturb)
    return _entrywise(cfg.space(), lhs.at, lambda r, c: mirror.at(_tau_pair(r), _tau_pair(c)), "first symmetry")


def _v0(x, q, a):
    return v_func(x, q, a, zero(len(a)))


def check_second_symmetry(cfg: ModelConfig, x, q, perturb: bool = False) -> Optional[Witness]:
    I, J = cfg.I, cfg.J
    rbar = build_Rbar(cfg, x, q)
    qi, qj = ipow(q, -I), ipow(q, -J)

    def rhs(row, col):
        (i, j), (ip, jp) = row, col
        factor = ipow(q, bracket(ip, jp, I, J) - bracket(i, j, I, J))
        factor = factor * _v0(qi, q, i) * _v0(qj, q, j) / (_v0(qi, q, ip) * _v0(qj, q, jp))
        return factor * rbar.at((reverse_tau(ip), reverse_tau(jp)), (reverse_tau(i), reverse_tau(j)))

    return _entrywise(cfg.space(), _lhs(rbar, perturb).at, rhs, "second symmetry")


def check_third_symmetry(cfg: ModelConfig, x, q, perturb: bool = False) -> Optional[Witness]:
    I, J = cfg.I, cfg.J
    rbar = build_Rbar(cfg, x, q)

    def rhs(row, col):
        (i, j), (ip, jp) = row, col
        si, sj, sip, sjp = rotate_sigma(i, I), rotate_sigma(j, J), rotate_sigma(ip, I), rotate_sigma(jp, J)
        expo = (weight(i) + weight(si)) - (weight(ip) + weight(sip))
        return ipow(x, expo) * rbar.at((si, sj), (sip, sjp))

    return _entrywise(cfg.space(), _lhs(rbar, perturb).at, rhs, "third symmetry")


def check_tau_sigma_symmetry(cfg: ModelConfig, u, q, perturb: bool = False) -> Optional[Witness]:
    I, J = cfg.I, cfg.J
    S = build_S(cfg, u, q)
    mirror = build_S(cfg.swapped(), u, q)

    def ts(state):
        i, j = state
        return (reverse_tau(rotate_sigma(j, J)), reverse_tau(rotate_sigma(i, I)))

    return _entrywise(cfg.space(), _lhs(S, perturb).at, lambda r, c: mirror.at(ts(r), ts(c)), "tau-sigma symmetry")


def check_equal_spin_symmetry(cfg: ModelConfig, u, q, perturb: bool = False) -> Optional[Witness]:
    """S_{J,J}[i,j;i',j'] = u^{|i'|-|i|} q^{2J(|j'|-|i|)} S_{J,J}[tau j, tau i; tau j', tau i']."""
    J = cfg.J
    S = build_S(cfg, u, q)

    def rhs(row, col):
        (i, j), (ip, jp) = row, col
        factor = ipow(u, weight(ip) - weight(i)) * ipow(q, 2 * J * (weight(jp) - weight(i)))
        return factor * S.at(_tau_pair(row), _tau_pair(col))

    return _entrywise(cfg.space(), _lhs(S, perturb).at, rhs, "equal-spin symmetry")


def verify_symmetries(cfg: ModelConfig, budget: Budget = Budget(), include_open: bool = False) -> Dict[str, VerificationReport]:
    """All index symmetries; the second symmetry for I != J only when ``include_open``."""
    label = f"n={cfg.n} I={cfg.I} J={cfg.J}"
    reports: Dict[str, VerificationReport] = {}

    def bind(checker, symbol):
        return lambda p: checker(cfg, p[symbol], p["q"], budget.perturb)

    reports["first"] = budget.run(f"first-symmetry {label}", bind(check_first_symmetry, "x"), ["q", "x"])
    if cfg.I == cfg.J or include_open:
        reports["second"] = budget.run(f"second-symmetry {label}", bind(check_second_symmetry, "x"), ["q", "x"])
    reports["third"] = budget.run(f"third-symmetry {label}", bind(check_third_symmetry, "x"), ["q", "x"])
    reports["tau-sigma"] = budget.run(f"tau-sigma-symmetry {label}", bind(check_tau_sigma_symmetry, "u"), ["q", "u"])
    if cfg.I == cfg.J:
        reports["equal-spin"] = budget.run(f"equal-spin-symmetry {label}", bind(check_equal_spin_symmetry, "u"), ["q", "u"])
    return reports


# non-difference R-matrix ------------------------------------------------------

def verify_nondiff_inverse(n: int, sector_cap: int, budget: Budget = Budget()) -> VerificationReport:
    """S_12(x, y) S_21(y, x) = Id on every sector up to the cap."""
    space = nondiff_space(n, sector_cap)

    def check(p):
        x, y, q2 = p["x"], p["y"], p["q"] * p["q"]
        forward = build_S_nondiff(n, x, y, q2, sector_cap)
        backward = embed(build_S_nondiff(n, y, x, q2, sector_cap), space, (1, 0))
        return perturb_first(forward @ backward, budget).compare(Operator.identity(space), "non-difference inverse")

    return budget.run(f"nondiff-inverse n={n} cap={sector_cap}", check, ["q", "x", "y"])


def verify_nondiff_specialization(cfg: ModelConfig, budget: Budget = Budget()) -> VerificationReport:
    """S_{I,J}(u = q^{J-I}) = delta * Phi_{q^2}(i | j'; q^{-2I}, q^{-2J})."""

    def check(p):
        q = p["q"]
        q2 = q * q
        S = perturb_first(build_S(cfg, ipow(q, cfg.J - cfg.I), q), budget)
        charge = cfg.space().charge

        def rhs(row, col):
            if charge(row) != charge(col):
                return Fraction(0)
            return phi(row[0], col[1], ipow(q2, -cfg.I), ipow(q2, -cfg.J), q2)

        return _entrywise(cfg.space(), S.at, rhs, "non-difference specialization")

    return budget.run(f"nondiff-specialization n={cfg.n} I={cfg.I} J={cfg.J}", check, ["q"])
