"""Standalone verifiers for the V-function identities and the basic summations."""

from .basic import (
    merged,
    pfaff_saalschutz,
    pfaff_saalschutz_multi,
    pfaff_saalschutz_staircase,
    q_binomial_theorem,
    q_vandermonde,
    staircase_summation,
    verify_appendixB,
)
from .lattice import IndexRange
from .vsums import (
    orthogonality_sides,
    star_star_sides,
    sum1_sides,
    sum2_sides,
    verify_orthogonality,
    verify_star_star,
    verify_sum1,
    verify_sum2,
    verify_sum2_from_star_star,
)
