"""
Operations on multi-indices: weight, scalar product, the quadratic form Q,
the reversal tau, the cyclic rotation sigma and the bracket [i, j].
"""

from itertools import product
from typing import Iterator, Tuple

from ..exactnum.errors import LengthMismatch, WeightExceedsJ

MultiIndex = Tuple[int, ...]


def _same_length(a: MultiIndex, b: MultiIndex) -> None:
    if len(a) != len(b):
        raise LengthMismatch(f"{a} and {b} have different lengths")


def weight(a: MultiIndex) -> int:
    return sum(a)


def dot(a: MultiIndex, b: MultiIndex) -> int:
    _same_length(a, b)
    return sum(x * y for x, y in zip(a, b))


def qform_Q(a: MultiIndex, b: MultiIndex) -> int:
    """Q(a, b) = sum over l < k of a_l b_k."""
    _same_length(a, b)
    total = 0
    prefix = 0
    for x, y in zip(a, b):
        total += prefix * y
        prefix += x
    return total


def add(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    _same_length(a, b)
    return tuple(x + y for x, y in zip(a, b))


def sub(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    _same_length(a, b)
    return tuple(x - y for x, y in zip(a, b))


def geq(a: MultiIndex, b: MultiIndex) -> bool:
    """Componentwise a >= b."""
    _same_length(a, b)
    return all(x >= y for x, y in zip(a, b))


def nonnegative(a: MultiIndex) -> bool:
    return all(x >= 0 for x in a)


def unit(m: int, k: int) -> MultiIndex:
    """e_k for k = 1..m; e_0 is the zero vector."""
    return tuple(1 if s == k else 0 for s in range(1, m + 1))


def zero(m: int) -> MultiIndex:
    return (0,) * m


def reverse_tau(a: MultiIndex) -> MultiIndex:
    return tuple(reversed(a))


def rotate_sigma(a: MultiIndex, J: int) -> MultiIndex:
    """sigma(i_1, ..., i_m) = (i_2, ..., i_m, J - |i|)."""
    if weight(a) > J:
        raise WeightExceedsJ(f"|{a}| > {J}")
    return tuple(a[1:]) + (J - weight(a),)


def sigma_inverse(a: MultiIndex, J: int) -> MultiIndex:
    if weight(a) > J:
        raise WeightExceedsJ(f"|{a}| > {J}")
    return (J - weight(a),) + tuple(a[:-1])


def sigma_power(a: MultiIndex, J: int, k: int) -> MultiIndex:
    for _ in range(k % (len(a) + 1)):
        a = rotate_sigma(a, J)
    return a


def tau_sigma(a: MultiIndex, J: int) -> MultiIndex:
    return reverse_tau(rotate_sigma(a, J))


def bracket(i: MultiIndex, j: MultiIndex, I: int, J: int) -> int:
    """[i, j] = (i, j) - (I - |i|)(J - |j|)."""
    if weight(i) > I:
        raise WeightExceedsJ(f"|{i}| > {I}")
    if weight(j) > J:
        raise WeightExceedsJ(f"|{j}| > {J}")
    return dot(i, j) - (I - weight(i)) * (J - weight(j))


def box(m: int, cap: int) -> Iterator[MultiIndex]:
    """All m-tuples with components in 0..cap, lexicographic."""
    return product(range(cap + 1), repeat=m)


def between(low: MultiIndex, high: MultiIndex) -> Iterator[MultiIndex]:
    """All c with low <= c <= high componentwise, lexicographic."""
    _same_length(low, high)
    if not geq(high, low):
        return iter(())
    return product(*(range(a, b + 1) for a, b in zip(low, high)))


def compositions(m: int, total: int) -> Iterator[MultiIndex]:
    """All m-tuples of non-negative integers summing to total."""
    if m == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(m - 1, total - first):
            yield (first,) + rest
