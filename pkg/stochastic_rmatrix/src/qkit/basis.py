"""
Basis of the symmetric representation V_J^(n): (n-1)-tuples of weight <= J
in ascending lexicographic order.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import comb
from typing import Dict, Tuple

from ..exactnum.errors import ConfigError
from .indices import MultiIndex


@dataclass(frozen=True)
class BasisSpace:
    n: int
    J: int
    indices: Tuple[MultiIndex, ...]
    ordinal: Dict[MultiIndex, int] = field(compare=False, hash=False, repr=False)

    @property
    def m(self) -> int:
        return self.n - 1

    @property
    def dim(self) -> int:
        return len(self.indices)

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __contains__(self, a) -> bool:
        return a in self.ordinal

    def label(self) -> str:
        return f"V_{self.J}^({self.n})"


@lru_cache(maxsize=None)
def enumerate_basis(n: int, J: int) -> BasisSpace:
    if n < 2:
        raise ConfigError(f"n must be >= 2, got {n}")
    if J < 0:
        raise ConfigError(f"J must be >= 0, got {J}")
    indices = tuple(a for a in product(range(J + 1), repeat=n - 1) if sum(a) <= J)
    space = BasisSpace(n, J, indices, {a: k for k, a in enumerate(indices)})
    assert space.dim == comb(J + n - 1, n - 1)
    return space
