"""Exact rational arithmetic, dual numbers and the identity-testing harness."""

from .errors import (
    ConfigError,
    DegenerateKernel,
    DimensionMismatch,
    LengthMismatch,
    NegativeRate,
    PoleEncountered,
    RKQError,
    SingularPartialTranspose,
    WeightExceedsJ,
    ZeroDenominator,
    ZeroToNegativePower,
)
from .report import (
    EXHAUSTED,
    FAIL,
    PASS,
    POLE,
    Budget,
    PointOutcome,
    VerificationReport,
    Witness,
    compare_values,
    perturb_first,
    run_at_points,
)
from .sampling import ParamPoint, sample_point
from .scalars import (
    DualScalar,
    ExactScalar,
    Scalar,
    deriv_part,
    dual_variable,
    exact,
    fmt_rat,
    ipow,
    parse_rat,
    rat,
    value_part,
)
