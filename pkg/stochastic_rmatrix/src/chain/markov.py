"""
Markov-process diagnostics of the open chain

FEATURES:
- <1|T(u) = c(u) <1| with the measured c(u)
- exact rank by fraction-free elimination
- sign survey of the rates of M = -H^T
- exact stationary distribution from the one-dimensional kernel
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Dict, List, Optional, Sequence, Tuple, Union

from ..exactnum.errors import DegenerateKernel, DimensionMismatch
from ..exactnum.report import Budget, VerificationReport, Witness, perturb_first
from ..exactnum.scalars import fmt_rat
from ..rmat.operator import Operator
from .model import GeneratorMatrix, ChainSpec
from .transfer import (
    double_row_transfer,
    hamiltonian_from_transfer,
    hamiltonian_local,
    periodic_hamiltonian,
    trace_ktilde_at_one,
)

logger = logging.getLogger(__name__)

Dense = List[List[Fraction]]


def exact_rank(matrix: Sequence[Sequence]) -> int:
    """Rank by Bareiss elimination on integer-scaled rows."""
    rows = []
    for row in matrix:
        scale = lcm(*(Fraction(v).denominator for v in row)) if row else 1
        rows.append([Fraction(v) * scale for v in row])
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    previous = Fraction(1)
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        p = rows[rank][col]
        for r in range(rank + 1, len(rows)):
            a = rows[r][col]
            rows[r] = [(p * x - a * y) / previous for x, y in zip(rows[r], rows[rank])]
        previous = p
        rank += 1
        if rank == len(rows):
            break
    return rank


def _null_vector(matrix: Dense) -> List[Fraction]:
    size = len(matrix)
    work = [list(map(Fraction, row)) for row in matrix]
    pivots: List[int] = []
    r = 0
    for col in range(size):
        pivot = next((k for k in range(r, size) if work[k][col] != 0), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv = 1 / work[r][col]
        work[r] = [v * inv for v in work[r]]
        for k in range(size):
            if k != r and work[k][col] != 0:
                f = work[k][col]
                work[k] = [a - f * b for a, b in zip(work[k], work[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(size) if c not in pivots]
    if len(free) != 1:
        raise DegenerateKernel(f"kernel has dimension {len(free)}, expected 1")
    vector = [Fraction(0)] * size
    vector[free[0]] = Fraction(1)
    for row, col in enumerate(pivots):
        vector[col] = -work[row][free[0]]
    return vector


def stationary_exact(generator: Union[GeneratorMatrix, Sequence[Sequence]]) -> List[Fraction]:
    """Probability vector pi with G pi = 0, G in column convention (columns sum to 0).

    A GeneratorMatrix is converted first: -H for a Hamiltonian, M^T for a
    row-convention generator.
    """
    if isinstance(generator, GeneratorMatrix):
        matrix = generator.column_convention().dense()
    else:
        matrix = [list(map(Fraction, row)) for row in generator]
    if any(len(row) != len(matrix) for row in matrix):
        raise DimensionMismatch("generator must be square")
    vector = _null_vector(matrix)
    total = sum(vector)
    if total == 0:
        raise DegenerateKernel("kernel vector sums to zero and cannot be normalized")
    return [v / total for v in vector]


def residual(generator: GeneratorMatrix, pi: Sequence[Fraction]) -> List[Fraction]:
    G = generator.column_convention()
    out = [Fraction(0)] * G.dim
    for r, c, v in G.entries():
        out[r] += v * pi[c]
    return out


def left_eigenvalue_of_ones(op: Operator) -> Tuple[Optional[Fraction], Optional[Witness]]:
    """c with <1| op = c <1|, or the first column that breaks proportionality."""
    sums = op.column_sums()
    c = sums[0]
    for k, s in enumerate(sums):
        if s != c:
            return None, Witness((op.space.states[k],), fmt_rat(s), fmt_rat(c), "<1|T not proportional to <1|")
    return c, None


@dataclass
class MarkovDiagnostics:
    spec: str
    transfer_factors: Dict[str, str] = field(default_factory=dict)
    stochastic_transfer: bool = True
    rank: int = 0
    dim: int = 0
    annihilated_by_ones: bool = True
    periodic_rank: Optional[int] = None
    sign_survey: Dict[str, List[Tuple[str, str, float]]] = field(default_factory=dict)

    @property
    def rank_is_maximal(self) -> bool:
        return self.rank == self.dim - 1

    def summary(self) -> Dict[str, object]:
        return {
            "spec": self.spec,
            "c(u)": self.transfer_factors,
            "stochastic_transfer": self.stochastic_transfer,
            "rank": self.rank,
            "dim": self.dim,
            "rank_is_dim_minus_one": self.rank_is_maximal,
            "ones_annihilate_H": self.annihilated_by_ones,
            "periodic_rank": self.periodic_rank,
            "negative_rates": {k: len(v) for k, v in self.sign_survey.items()},
        }


def markov_diagnostics(spec: ChainSpec, u_points: Sequence[Fraction],
                       sign_points: Sequence[Tuple[Fraction, Fraction]] = ()) -> MarkovDiagnostics:
    report = MarkovDiagnostics(spec.describe())
    for u in u_points:
        c, witness = left_eigenvalue_of_ones(double_row_transfer(spec, u).op)
        if witness is not None:
            report.stochastic_transfer = False
            report.transfer_factors[fmt_rat(u)] = "not proportional"
            logger.warning(f"⚠️ <1|T(u) not proportional to <1| at u={fmt_rat(u)}: {witness.location}")
        else:
            report.transfer_factors[fmt_rat(u)] = fmt_rat(c)
    H = hamiltonian_local(spec)
    report.dim = H.dim
    report.rank = exact_rank(H.dense())
    report.annihilated_by_ones = all(s == 0 for s in H.op.column_sums())
    if spec.N >= 2:
        report.periodic_rank = exact_rank(periodic_hamiltonian(spec).dense())
        if report.periodic_rank < report.dim - 1:
            logger.info(f"📊 periodic control has rank deficit {report.dim - 1 - report.periodic_rank}")
    for q, nu in sign_points:
        point = spec.with_point(q, nu)
        negatives = hamiltonian_local(point).negative_rates()
        report.sign_survey[f"q={fmt_rat(q)},nu={fmt_rat(nu)}"] = negatives
    logger.info(f"📊 rank(H) = {report.rank} of {report.dim} for {spec.describe()}")
    return report


# verifiers --------------------------------------------------------------------

def verify_transfer(spec: ChainSpec, budget: Budget = Budget()) -> VerificationReport:
    """T(1) = tr K~(1) Id, [T(u), T(v)] = 0 and <1|T(u) proportional to <1|."""
    notes: Dict[str, str] = {}

    def check(p):
        point = spec.with_point(p["q"], p["nu"])
        u, v = p["u"], p["v"]
        T1 = double_row_transfer(point, Fraction(1)).op
        witness = T1.compare(Operator.identity(T1.space, trace_ktilde_at_one(point)), "T(1) = tr K~(1) Id")
        if witness is not None:
            return witness
        Tu, Tv = double_row_transfer(point, u).op, double_row_transfer(point, v).op
        witness = perturb_first(Tu @ Tv, budget).compare(Tv @ Tu, "[T(u), T(v)] = 0")
        if witness is not None:
            return witness
        c, witness = left_eigenvalue_of_ones(Tu)
        if c is not None:
            notes[f"c({fmt_rat(u)})"] = fmt_rat(c)
        return witness

    report = budget.run(f"transfer n={spec.n} J={spec.J} N={spec.N}", check, ["q", "nu", "u", "v"])
    report.notes.update(notes)
    return report


def verify_hamiltonian(spec: ChainSpec, budget: Budget = Budget()) -> VerificationReport:
    """<1|H = 0, local = transfer derivative, and rank(H) = dim - 1 reported."""
    notes: Dict[str, str] = {}

    def check(p):
        point = spec.with_point(p["q"], p["nu"])
        local = hamiltonian_local(point)
        op = perturb_first(local.op, budget)
        sums = op.column_sums()
        for k, s in enumerate(sums):
            if s != 0:
                return Witness((op.space.states[k],), fmt_rat(s), "0/1", "<1|H = 0")
        witness = op.compare(hamiltonian_from_transfer(point).op, "H local vs -(1/4) T'(1)")
        if witness is None:
            rank = exact_rank(local.dense())
            notes["rank"] = f"{rank} of {local.dim}"
        return witness

    report = budget.run(f"hamiltonian n={spec.n} J={spec.J} N={spec.N}", check, ["q", "nu"])
    report.notes.update(notes)
    return report
