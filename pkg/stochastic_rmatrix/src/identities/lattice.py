"""Summation domains over multi-indices with bounded components."""

from dataclasses import dataclass
from typing import Iterator, Tuple

from ..qkit.indices import MultiIndex, between, box


@dataclass(frozen=True)
class IndexRange:
    """m-component indices with every component in 0..cap."""

    m: int
    cap: int

    def points(self) -> Iterator[MultiIndex]:
        return box(self.m, self.cap)

    def top(self) -> MultiIndex:
        return (self.cap,) * self.m

    def above(self, low: MultiIndex) -> Iterator[MultiIndex]:
        return between(low, self.top())

    def chains(self, length: int) -> Iterator[Tuple[MultiIndex, ...]]:
        """All ascending chains c_1 <= c_2 <= ... <= c_length."""
        if length == 0:
            yield ()
            return
        for head in self.points():
            yield from self._extend((head,), length - 1)

    def _extend(self, chain, remaining):
        if remaining == 0:
            yield chain
            return
        for nxt in self.above(chain[-1]):
            yield from self._extend(chain + (nxt,), remaining - 1)

    def star_quadruples(self) -> Iterator[Tuple[MultiIndex, MultiIndex, MultiIndex, MultiIndex]]:
        """(a, b, c, d) with a >= b >= d and a >= c >= d componentwise."""
        for d in self.points():
            for b in self.above(d):
                for c in self.above(d):
                    for a in self.above(tuple(max(x, y) for x, y in zip(b, c))):
                        yield a, b, c, d

    def wedge_triples(self) -> Iterator[Tuple[MultiIndex, MultiIndex, MultiIndex]]:
        """(a, b, c) with a <= b and a <= c."""
        for a in self.points():
            for b in self.above(a):
                for c in self.above(a):
                    yield a, b, c
