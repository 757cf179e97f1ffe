"""
Random rational parameter points for polynomial identity testing.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List

from .scalars import fmt_rat


@dataclass(frozen=True)
class ParamPoint:
    """Exact rational values bound to symbol names."""

    bindings: Dict[str, Fraction] = field(default_factory=dict)

    def __getitem__(self, name: str) -> Fraction:
        return self.bindings[name]

    def __contains__(self, name: str) -> bool:
        return name in self.bindings

    def with_values(self, **values) -> "ParamPoint":
        merged = dict(self.bindings)
        merged.update({k: Fraction(v) for k, v in values.items()})
        return ParamPoint(merged)

    def as_strings(self) -> Dict[str, str]:
        return {name: fmt_rat(value) for name, value in self.bindings.items()}


def sample_point(symbols: Iterable[str], seed: int, bound: int = 20) -> ParamPoint:
    """Draw a/b with 1 <= a, b <= bound for every symbol, deterministic in seed.

    q is never 1 (q = ±1 and 0 are excluded by construction).
    """
    if bound < 2:
        raise ValueError(f"bound must be >= 2, got {bound}")
    rng = random.Random(seed)
    values: Dict[str, Fraction] = {}
    for name in symbols:
        while True:
            value = Fraction(rng.randint(1, bound), rng.randint(1, bound))
            if name == "q" and value == 1:
                continue
            break
        values[name] = value
    return ParamPoint(values)


def point_stream(symbols: List[str], seed: int, bound: int):
    """Endless deterministic sequence of independent points."""
    index = 0
    while True:
        yield sample_point(symbols, seed * 7919 + index, bound)
        index += 1
