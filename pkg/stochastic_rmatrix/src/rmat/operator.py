"""
Sparse exact operators on (possibly truncated) tensor products of
symmetric-representation spaces.

A state is a tuple of multi-indices, one per tensor factor. Rows index the
output state, columns the input state: entry (r, c) is the coefficient of
|r> in O|c>. Entries are Fraction or DualScalar; zeros are never stored.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from ..exactnum.errors import DimensionMismatch, SingularPartialTranspose
from ..exactnum.report import Witness
from ..exactnum.scalars import fmt_rat
from ..qkit.basis import BasisSpace
from ..qkit.indices import MultiIndex, add, weight

logger = logging.getLogger(__name__)

State = Tuple[MultiIndex, ...]


@dataclass(frozen=True)
class TensorSpace:
    """Ordered basis of V_1 ⊗ ... ⊗ V_k, optionally truncated by total weight."""

    factors: Tuple[BasisSpace, ...]
    cap: Optional[int] = None
    states: Tuple[State, ...] = field(default=(), compare=False, repr=False)
    ordinal: Dict[State, int] = field(default_factory=dict, compare=False, hash=False, repr=False)

    @classmethod
    def of(cls, *factors: BasisSpace, cap: Optional[int] = None) -> "TensorSpace":
        states = tuple(
            s for s in product(*(f.indices for f in factors))
            if cap is None or sum(weight(a) for a in s) <= cap
        )
        return cls(tuple(factors), cap, states, {s: k for k, s in enumerate(states)})

    @property
    def dim(self) -> int:
        return len(self.states)

    @property
    def sites(self) -> int:
        return len(self.factors)

    def drop(self, site: int) -> "TensorSpace":
        if self.cap is not None:
            raise DimensionMismatch("cannot trace a site out of a truncated space")
        return TensorSpace.of(*(f for k, f in enumerate(self.factors) if k != site))

    def charge(self, state: State) -> MultiIndex:
        total = state[0]
        for a in state[1:]:
            total = add(total, a)
        return total

    def describe(self) -> str:
        body = " ⊗ ".join(f.label() for f in self.factors)
        return body if self.cap is None else f"{body} (total <= {self.cap})"


class Operator:
    """Immutable sparse matrix over a TensorSpace (the BlockOperator type)."""

    __slots__ = ("space", "_rows")

    def __init__(self, space: TensorSpace, rows: Optional[Dict[int, Dict[int, object]]] = None):
        self.space = space
        self._rows: Dict[int, Dict[int, object]] = {}
        for r, row in (rows or {}).items():
            kept = {c: v for c, v in row.items() if v != 0}
            if kept:
                self._rows[r] = kept

    # construction ---------------------------------------------------------

    @classmethod
    def from_function(cls, space: TensorSpace, entry: Callable[[State, State], object],
                      candidates: Optional[Callable[[State], Sequence[State]]] = None) -> "Operator":
        """Build from entry(row_state, col_state); candidates(col) limits the rows visited."""
        rows: Dict[int, Dict[int, object]] = defaultdict(dict)
        for c, col in enumerate(space.states):
            targets = candidates(col) if candidates else space.states
            for row in targets:
                r = space.ordinal.get(row)
                if r is None:
                    continue
                value = entry(row, col)
                if value != 0:
                    rows[r][c] = value
        return cls(space, rows)

    @classmethod
    def from_dense(cls, space: TensorSpace, matrix: Sequence[Sequence]) -> "Operator":
        if len(matrix) != space.dim:
            raise DimensionMismatch(f"{len(matrix)} rows for a space of dimension {space.dim}")
        return cls(space, {r: dict(enumerate(row)) for r, row in enumerate(matrix)})

    @classmethod
    def identity(cls, space: TensorSpace, scale=Fraction(1)) -> "Operator":
        return cls(space, {k: {k: scale} for k in range(space.dim)})

    @classmethod
    def diagonal(cls, space: TensorSpace, value: Callable[[State], object]) -> "Operator":
        return cls(space, {k: {k: value(s)} for k, s in enumerate(space.states)})

    # access -----------------------------------------------------------------

    @property
    def dim(self) -> int:
        return self.space.dim

    def entry(self, row: int, col: int):
        return self._rows.get(row, {}).get(col, Fraction(0))

    def at(self, row: State, col: State):
        return self.entry(self.space.ordinal[row], self.space.ordinal[col])

    def entries(self) -> Iterator[Tuple[int, int, object]]:
        for r in sorted(self._rows):
            row = self._rows[r]
            for c in sorted(row):
                yield r, c, row[c]

    def nnz(self) -> int:
        return sum(len(row) for row in self._rows.values())

    def columns(self) -> Dict[int, Dict[int, object]]:
        cols: Dict[int, Dict[int, object]] = defaultdict(dict)
        for r, row in self._rows.items():
            for c, v in row.items():
                cols[c][r] = v
        return cols

    def dense(self) -> List[List]:
        out = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for r, c, v in self.entries():
            out[r][c] = v
        return out

    def map_entries(self, fn: Callable[[State, State, object], object]) -> "Operator":
        states = self.space.states
        return Operator(self.space, {
            r: {c: fn(states[r], states[c], v) for c, v in row.items()} for r, row in self._rows.items()
        })

    # algebra ------------------------------------------------------------------

    def _check(self, other: "Operator") -> None:
        if self.space != other.space:
            raise DimensionMismatch(f"{self.space.describe()} vs {other.space.describe()}")

    def __matmul__(self, other: "Operator") -> "Operator":
        self._check(other)
        out: Dict[int, Dict[int, object]] = {}
        for r, row in self._rows.items():
            acc: Dict[int, object] = defaultdict(int)
            for k, a in row.items():
                for c, b in other._rows.get(k, {}).items():
                    acc[c] = acc[c] + a * b
            out[r] = acc
        return Operator(self.space, out)

    def __add__(self, other: "Operator") -> "Operator":
        self._check(other)
        out: Dict[int, Dict[int, object]] = {r: dict(row) for r, row in self._rows.items()}
        for r, row in other._rows.items():
            target = out.setdefault(r, {})
            for c, v in row.items():
                target[c] = target.get(c, 0) + v
        return Operator(self.space, out)

    def __neg__(self) -> "Operator":
        return self.scale(-1)

    def __sub__(self, other: "Operator") -> "Operator":
        return self + (-other)

    def scale(self, factor) -> "Operator":
        return Operator(self.space, {r: {c: factor * v for c, v in row.items()} for r, row in self._rows.items()})

    def transpose(self) -> "Operator":
        return Operator(self.space, self.columns())

    def partial_transpose(self, site: int) -> "Operator":
        """Transpose in tensor factor ``site`` only."""
        states, ordinal = self.space.states, self.space.ordinal
        out: Dict[int, Dict[int, object]] = defaultdict(dict)
        for r, row in self._rows.items():
            for c, v in row.items():
                rs, cs = list(states[r]), list(states[c])
                rs[site], cs[site] = cs[site], rs[site]
                nr, nc = ordinal.get(tuple(rs)), ordinal.get(tuple(cs))
                if nr is None or nc is None:
                    raise DimensionMismatch("partial transpose leaves the truncated space")
                out[nr][nc] = v
        return Operator(self.space, out)

    def trace_out(self, site: int) -> "Operator":
        """Partial trace over tensor factor ``site``."""
        reduced = self.space.drop(site)
        states = self.space.states
        out: Dict[int, Dict[int, object]] = defaultdict(lambda: defaultdict(int))
        for r, row in self._rows.items():
            rs = states[r]
            for c, v in row.items():
                cs = states[c]
                if rs[site] != cs[site]:
                    continue
                key_r = reduced.ordinal[rs[:site] + rs[site + 1:]]
                key_c = reduced.ordinal[cs[:site] + cs[site + 1:]]
                out[key_r][key_c] = out[key_r][key_c] + v
        return Operator(reduced, {r: dict(row) for r, row in out.items()})

    def trace(self):
        total = Fraction(0)
        for k, row in self._rows.items():
            if k in row:
                total = total + row[k]
        return total

    def column_sums(self) -> List:
        sums: List = [Fraction(0)] * self.dim
        for row in self._rows.values():
            for c, v in row.items():
                sums[c] = sums[c] + v
        return sums

    def row_vector_left(self, vector: Sequence) -> List:
        """<v| O as a list."""
        out: List = [Fraction(0)] * self.dim
        for r, row in self._rows.items():
            if vector[r] == 0:
                continue
            for c, v in row.items():
                out[c] = out[c] + vector[r] * v
        return out

    def inverse(self) -> "Operator":
        """Exact inverse by Gauss–Jordan elimination."""
        matrix = self.dense()
        inv = gauss_jordan_inverse(matrix)
        return Operator.from_dense(self.space, inv)

    def sectors(self) -> Dict[MultiIndex, List[int]]:
        """State ordinals grouped by total charge."""
        groups: Dict[MultiIndex, List[int]] = defaultdict(list)
        for k, s in enumerate(self.space.states):
            groups[self.space.charge(s)].append(k)
        return dict(groups)

    def conserves_charge(self) -> bool:
        states = self.space.states
        return all(self.space.charge(states[r]) == self.space.charge(states[c]) for r, c, _ in self.entries())

    # comparison ----------------------------------------------------------------

    def compare(self, other: "Operator", label: str = "") -> Optional[Witness]:
        """None if equal entrywise, otherwise the first differing entry."""
        self._check(other)
        keys = set()
        for r, row in self._rows.items():
            keys.update((r, c) for c in row)
        for r, row in other._rows.items():
            keys.update((r, c) for c in row)
        states = self.space.states
        for r, c in sorted(keys):
            a, b = self.entry(r, c), other.entry(r, c)
            if a != b:
                return Witness((states[r], states[c]), _fmt(a), _fmt(b), label)
        return None

    def __eq__(self, other) -> bool:
        return isinstance(other, Operator) and self.compare(other) is None

    __hash__ = None

    def perturbed(self, row: int, col: int, delta=Fraction(1, 7)) -> "Operator":
        """Copy with one entry shifted by a nonzero rational (negative controls)."""
        rows = {r: dict(v) for r, v in self._rows.items()}
        target = rows.setdefault(row, {})
        target[col] = target.get(col, 0) + delta
        return Operator(self.space, rows)

    def __repr__(self) -> str:
        return f"Operator({self.space.describe()}, nnz={self.nnz()})"


def _fmt(value) -> str:
    try:
        return fmt_rat(value)
    except (TypeError, ValueError):
        return str(value)


def gauss_jordan_inverse(matrix: Sequence[Sequence]) -> List[List]:
    size = len(matrix)
    work = [list(row) + [Fraction(int(i == j)) for j in range(size)] for i, row in enumerate(matrix)]
    for col in range(size):
        pivot = next((r for r in range(col, size) if work[r][col] != 0), None)
        if pivot is None:
            raise SingularPartialTranspose(f"matrix is singular at column {col}")
        work[col], work[pivot] = work[pivot], work[col]
        inv_p = 1 / work[col][col]
        work[col] = [v * inv_p for v in work[col]]
        for r in range(size):
            if r != col and work[r][col] != 0:
                factor = work[r][col]
                work[r] = [a - factor * b for a, b in zip(work[r], work[col])]
    return [row[size:] for row in work]


def kron(a: Operator, b: Operator) -> Operator:
    """a ⊗ b on the concatenated tensor space."""
    space = TensorSpace.of(*(a.space.factors + b.space.factors))
    out: Dict[int, Dict[int, object]] = defaultdict(dict)
    sa, sb = a.space.states, b.space.states
    for ra, ca, va in a.entries():
        for rb, cb, vb in b.entries():
            out[space.ordinal[sa[ra] + sb[rb]]][space.ordinal[sa[ca] + sb[cb]]] = va * vb
    return Operator(space, out)


def embed(op: Operator, target: TensorSpace, sites: Sequence[int]) -> Operator:
    """Place ``op`` on the given sites of ``target`` (factor k of op acts on sites[k]).

    Reversed site orders give the flipped operators, e.g. R_21 = embed(R, space, (1, 0)).
    """
    if len(sites) != op.space.sites:
        raise DimensionMismatch(f"operator has {op.space.sites} factors, got sites {tuple(sites)}")
    for k, s in enumerate(sites):
        if op.space.factors[k] != target.factors[s]:
            raise DimensionMismatch(f"factor {k} does not match site {s}")
    cols = op.columns()
    op_states, op_ordinal = op.space.states, op.space.ordinal
    out: Dict[int, Dict[int, object]] = defaultdict(dict)
    for c, col in enumerate(target.states):
        local = op_ordinal.get(tuple(col[s] for s in sites))
        if local is None:
            continue
        for r_local, v in cols.get(local, {}).items():
            row = list(col)
            for k, s in enumerate(sites):
                row[s] = op_states[r_local][k]
            r = target.ordinal.get(tuple(row))
            if r is not None:
                out[r][c] = v
    return Operator(target, out)


def product_of(ops: Sequence[Operator]) -> Operator:
    result = ops[0]
    for op in ops[1:]:
        result = result @ op
    return result
