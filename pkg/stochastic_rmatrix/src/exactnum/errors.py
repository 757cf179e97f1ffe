"""
Exception hierarchy shared by every module.

PoleEncountered derives from ZeroDivisionError so that a plain Fraction
division by zero and an explicitly detected pole are handled the same way
by the resampling harness.
"""


class RKQError(Exception):
    """Base class for all errors raised by the engine."""


class ZeroDenominator(RKQError, ValueError):
    """A rational number was requested with denominator 0."""


class PoleEncountered(RKQError, ZeroDivisionError):
    """An evaluation hit a pole of a rational function."""


class ZeroToNegativePower(PoleEncountered):
    """0 raised to a negative integer power."""


class LengthMismatch(RKQError, ValueError):
    """Multi-indices of different lengths were combined."""


class WeightExceedsJ(RKQError, ValueError):
    """A multi-index has total weight larger than the representation spin."""


class SingularPartialTranspose(RKQError, ArithmeticError):
    """The partial transpose of an R-matrix is not invertible at this point."""


class DimensionMismatch(RKQError, ValueError):
    """Operators act on incompatible spaces."""


class DegenerateKernel(RKQError, ArithmeticError):
    """A generator does not have a one-dimensional kernel."""


class NegativeRate(RKQError, ValueError):
    """A Markov generator has a negative off-diagonal rate."""

    def __init__(self, transitions):
        self.transitions = list(transitions)
        preview = ", ".join(f"{a}->{b}: {r:.6g}" for a, b, r in self.transitions[:5])
        more = "" if len(self.transitions) <= 5 else f" (+{len(self.transitions) - 5} more)"
        super().__init__(f"negative rates for transitions {preview}{more}")


class ConfigError(RKQError, ValueError):
    """Invalid model or command configuration."""
