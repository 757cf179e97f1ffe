"""
Verification reports and the Schwartz–Zippel evaluation harness.

A check is a callable taking a ParamPoint and returning None on success or a
Witness describing the first mismatch. Poles hit by unlucky samples are
recorded and the point is resampled; they never count as failures.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .errors import SingularPartialTranspose
from .sampling import ParamPoint, point_stream

logger = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"
POLE = "pole-resampled"
EXHAUSTED = "pole-exhausted"


@dataclass
class Witness:
    """First location where the two sides of an identity differ."""

    location: Tuple
    lhs: str
    rhs: str
    detail: str = ""

    def to_dict(self) -> Dict:
        return {"location": [str(x) for x in self.location], "lhs": self.lhs, "rhs": self.rhs, "detail": self.detail}


@dataclass
class PointOutcome:
    params: Dict[str, str]
    status: str
    witness: Optional[Witness] = None


@dataclass
class VerificationReport:
    identity: str
    outcomes: List[PointOutcome] = field(default_factory=list)
    notes: Dict[str, str] = field(default_factory=dict)

    @property
    def status(self) -> str:
        if any(o.status == FAIL for o in self.outcomes):
            return FAIL
        if any(o.status == EXHAUSTED for o in self.outcomes):
            return EXHAUSTED
        return PASS if any(o.status == PASS for o in self.outcomes) else EXHAUSTED

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @property
    def witness(self) -> Optional[Witness]:
        for outcome in self.outcomes:
            if outcome.witness is not None:
                return outcome.witness
        return None

    @property
    def points_tried(self) -> int:
        return len(self.outcomes)

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        self.outcomes.extend(other.outcomes)
        self.notes.update(other.notes)
        return self


Check = Callable[[ParamPoint], Optional[Witness]]


def run_at_points(
    identity: str,
    check: Check,
    symbols: Sequence[str],
    points: int = 3,
    seed: int = 0,
    bound: int = 20,
    max_resample: int = 25,
    fixed: Optional[Dict] = None,
) -> VerificationReport:
    """Evaluate ``check`` at ``points`` independent pole-free random points."""
    report = VerificationReport(identity)
    stream = point_stream(list(symbols), seed, bound)
    good = 0
    poles = 0
    while good < points:
        point = next(stream)
        if fixed:
            point = point.with_values(**fixed)
        try:
            witness = check(point)
        except (ZeroDivisionError, SingularPartialTranspose) as exc:
            poles += 1
            report.outcomes.append(PointOutcome(point.as_strings(), POLE))
            logger.debug(f"⚠️ {identity}: pole at {point.as_strings()} ({exc}); resampling")
            if poles > max_resample:
                report.outcomes.append(PointOutcome(point.as_strings(), EXHAUSTED))
                logger.warning(f"⚠️ {identity}: gave up after {poles} poles")
                break
            continue
        if witness is None:
            report.outcomes.append(PointOutcome(point.as_strings(), PASS))
            good += 1
        else:
            report.outcomes.append(PointOutcome(point.as_strings(), FAIL, witness))
            logger.info(f"❌ {identity} failed at {point.as_strings()}: {witness.location}")
            break
    if report.passed:
        logger.debug(f"✅ {identity} passed at {good} points")
    return report


def compare_values(location, lhs, rhs) -> Optional[Witness]:
    """Witness if two scalars differ."""
    if lhs == rhs:
        return None
    return Witness(tuple(location), str(lhs), str(rhs))


@dataclass
class Budget:
    """How many points to try and how to draw them."""

    points: int = 3
    seed: int = 0
    bound: int = 20
    max_resample: int = 25
    perturb: bool = False

    def run(self, identity: str, check: Check, symbols: Sequence[str], fixed: Optional[Dict] = None) -> VerificationReport:
        return run_at_points(identity, check, symbols, self.points, self.seed, self.bound, self.max_resample, fixed)


def perturb_first(op, budget: Budget):
    """Shift one stored entry when the budget requests a negative control."""
    if not budget.perturb:
        return op
    for r, c, _ in op.entries():
        return op.perturbed(r, c)
    return op.perturbed(0, 0)
