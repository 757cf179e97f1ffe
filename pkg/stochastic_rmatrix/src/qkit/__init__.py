"""Multi-index combinatorics, bases and q-special functions."""

from .basis import BasisSpace, enumerate_basis
from .indices import (
    MultiIndex,
    add,
    between,
    box,
    bracket,
    compositions,
    dot,
    geq,
    nonnegative,
    qform_Q,
    reverse_tau,
    rotate_sigma,
    sigma_inverse,
    sigma_power,
    sub,
    tau_sigma,
    unit,
    weight,
    zero,
)
from .qseries import (
    lambda_function,
    mu_function,
    phi,
    phi_hat,
    qbinomial,
    qpochhammer,
    qpochhammer_many,
    v_func,
)
