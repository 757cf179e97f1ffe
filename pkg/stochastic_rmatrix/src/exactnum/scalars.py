"""
Exact scalars: canonical rationals and dual numbers over them.

ExactScalar is ``fractions.Fraction``. DualScalar carries a value and a first
derivative so that d/dx at a point can be taken exactly by ordinary arithmetic.
"""

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union

from .errors import PoleEncountered, ZeroDenominator, ZeroToNegativePower

ExactScalar = Fraction


def rat(num: int, den: int = 1) -> Fraction:
    """Canonical reduced fraction num/den (sign on the numerator)."""
    if den == 0:
        raise ZeroDenominator(f"rat({num}, {den})")
    return Fraction(num, den)


def parse_rat(text: Union[str, int, Fraction]) -> Fraction:
    """Parse "a/b", "a" or a decimal literal into an exact rational."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    raw = str(text).strip()
    if "/" in raw:
        num, den = raw.split("/", 1)
        return rat(int(num), int(den))
    return Fraction(raw)


def fmt_rat(value) -> str:
    """Serialize an exact scalar as "num/den" (dual numbers as "value+deriv*eps")."""
    if isinstance(value, DualScalar):
        return f"{fmt_rat(value.value)}+{fmt_rat(value.deriv)}*eps"
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def ipow(base, e: int):
    """Exact integer power; negative exponents of 0 raise ZeroToNegativePower."""
    if e < 0 and base == 0:
        raise ZeroToNegativePower(f"0 ** {e}")
    if isinstance(base, int):
        base = Fraction(base)
    return base ** e


@dataclass(frozen=True, eq=False)
class DualScalar:
    """a + b·ε with ε² = 0 over exact rationals."""

    value: Fraction
    deriv: Fraction = Fraction(0)

    @staticmethod
    def lift(other) -> "DualScalar":
        if isinstance(other, DualScalar):
            return other
        if isinstance(other, Rational):
            return DualScalar(Fraction(other), Fraction(0))
        raise TypeError(f"cannot lift {type(other).__name__} to DualScalar")

    def __add__(self, other):
        if not isinstance(other, (DualScalar, Rational)):
            return NotImplemented
        o = DualScalar.lift(other)
        return DualScalar(self.value + o.value, self.deriv + o.deriv)

    __radd__ = __add__

    def __neg__(self):
        return DualScalar(-self.value, -self.deriv)

    def __sub__(self, other):
        if not isinstance(other, (DualScalar, Rational)):
            return NotImplemented
        return self + (-DualScalar.lift(other))

    def __rsub__(self, other):
        if not isinstance(other, (DualScalar, Rational)):
            return NotImplemented
        return DualScalar.lift(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, (DualScalar, Rational)):
            return NotImplemented
        o = DualScalar.lift(other)
        return DualScalar(self.value * o.value, self.value * o.deriv + self.deriv * o.value)

    __rmul__ = __mul__

    def reciprocal(self) -> "DualScalar":
        if self.value == 0:
            raise PoleEncountered("division by a dual number with zero value")
        return DualScalar(1 / self.value, -self.deriv / (self.value * self.value))

    def __truediv__(self, other):
        if not isinstance(other, (DualScalar, Rational)):
            return NotImplemented
        return self * DualScalar.lift(other).reciprocal()

    def __rtruediv__(self, other):
        if not isinstance(other, (DualScalar, Rational)):
            return NotImplemented
        return DualScalar.lift(other) * self.reciprocal()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.reciprocal() ** (-e)
        if e == 0:
            return DualScalar(Fraction(1))
        # d(a^k) = k a^(k-1) da
        return DualScalar(self.value ** e, e * self.value ** (e - 1) * self.deriv)

    def __eq__(self, other):
        if isinstance(other, (DualScalar, Rational)):
            o = DualScalar.lift(other)
            return self.value == o.value and self.deriv == o.deriv
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.deriv))

    def __repr__(self):
        return f"DualScalar({self.value}, {self.deriv})"


Scalar = Union[Fraction, DualScalar]


def dual_variable(at, slope=1) -> DualScalar:
    """Seed a dual variable value=at, derivative=slope."""
    return DualScalar(Fraction(at), Fraction(slope))


def value_part(x) -> Fraction:
    return x.value if isinstance(x, DualScalar) else Fraction(x)


def deriv_part(x) -> Fraction:
    return x.deriv if isinstance(x, DualScalar) else Fraction(0)


def exact(x):
    """Promote ints to Fraction; Fraction and DualScalar pass through."""
    if isinstance(x, (DualScalar, Fraction)):
        return x
    if isinstance(x, Rational):
        return Fraction(x)
    return parse_rat(x)
