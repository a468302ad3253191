"""Core types for covering arrays.

A covering array CA(N; t, k, v) is an N x k matrix over the symbols
{0, ..., v-1} in which, for every choice of t columns, every one of the
v**t possible symbol t-tuples appears in at least one row.  Everything else
in the package builds on the value types defined here:

* ``CAParams``    - the parameter triple (t, k, v),
* ``SymbolArray`` - a candidate or completed array,
* ``Interaction`` - an assignment of symbols to t specific columns,
* ``ColumnSet``   - a bare t-subset of columns.

Conventions, fixed once and relied on everywhere:

* symbols are the integers 0..v-1; external alphabets are mapped at the
  I/O boundary,
* column indices are 0-based internally and 1-based only in human-facing
  CLI output,
* column subsets are strictly increasing tuples, ordered and ranked
  colexicographically (the rank of a subset does not depend on k),
* symbol tuples are ranked as base-v numbers with the first position most
  significant, which makes tuple rank order equal to lexicographic order.

An interaction's dense rank is ``colex_rank(columns) * v**t + symbol rank``,
a bijection onto {0, ..., C(k,t)*v**t - 1}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

__all__ = [
    "CAParams",
    "SymbolArray",
    "Interaction",
    "ColumnSet",
    "covers",
    "interaction_rank",
    "interaction_unrank",
    "colex_rank",
    "colex_unrank",
    "colex_combinations",
    "symbols_rank",
    "symbols_unrank",
]

CELL_DTYPE = np.int32


@dataclass(frozen=True)
class CAParams:
    """Covering array parameters: strength t, columns k, alphabet size v."""

    t: int
    k: int
    v: int

    def __post_init__(self) -> None:
        if not (isinstance(self.t, int) and isinstance(self.k, int) and isinstance(self.v, int)):
            raise TypeError("t, k, v must be integers")
        if self.t < 2:
            raise ValueError(f"strength t must be at least 2, got {self.t}")
        if self.k < self.t:
            raise ValueError(f"need k >= t, got k={self.k}, t={self.t}")
        if self.v < 2:
            raise ValueError(f"alphabet size v must be at least 2, got {self.v}")

    @property
    def tuple_count(self) -> int:
        """v**t, the number of symbol tuples on one column set."""
        return self.v**self.t

    @property
    def interaction_space_size(self) -> int:
        """C(k,t) * v**t, exact."""
        return math.comb(self.k, self.t) * self.v**self.t


@dataclass(frozen=True, eq=False)
class SymbolArray:
    """An n x k matrix of symbols in {0, ..., v-1}.

    The cell matrix is stored as a read-only int32 ndarray; instances are
    immutable values and safe to share between threads.
    """

    params: CAParams
    cells: np.ndarray

    def __post_init__(self) -> None:
        cells = np.ascontiguousarray(self.cells, dtype=CELL_DTYPE)
        if cells.ndim != 2:
            cells = cells.reshape((-1, self.params.k))
        if cells.shape[1] != self.params.k:
            raise ValueError(
                f"rows have length {cells.shape[1]}, expected k={self.params.k}"
            )
        if cells.size and (cells.min() < 0 or cells.max() >= self.params.v):
            raise ValueError(f"cell values must lie in 0..{self.params.v - 1}")
        cells.setflags(write=False)
        object.__setattr__(self, "cells", cells)

    @classmethod
    def from_rows(cls, params: CAParams, rows: Sequence[Sequence[int]]) -> "SymbolArray":
        data = np.array(list(rows), dtype=CELL_DTYPE).reshape((-1, params.k))
        return cls(params, data)

    @classmethod
    def empty(cls, params: CAParams) -> "SymbolArray":
        return cls(params, np.empty((0, params.k), dtype=CELL_DTYPE))

    @property
    def n_rows(self) -> int:
        return self.cells.shape[0]

    def row(self, i: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.cells[i])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymbolArray):
            return NotImplemented
        return self.params == other.params and np.array_equal(self.cells, other.cells)

    def __repr__(self) -> str:
        p = self.params
        return f"SymbolArray(n={self.n_rows}, t={p.t}, k={p.k}, v={p.v})"


@dataclass(frozen=True)
class ColumnSet:
    """A strictly increasing tuple of column indices."""

    columns: tuple[int, ...]

    def __post_init__(self) -> None:
        cols = tuple(int(c) for c in self.columns)
        if any(c < 0 for c in cols):
            raise ValueError("column indices must be nonnegative")
        if any(a >= b for a, b in zip(cols, cols[1:])):
            raise ValueError(f"columns must be strictly increasing, got {cols}")
        object.__setattr__(self, "columns", cols)

    def valid_for(self, params: CAParams) -> bool:
        return len(self.columns) == params.t and all(c < params.k for c in self.columns)


@dataclass(frozen=True)
class Interaction:
    """Symbols assigned to a strictly increasing tuple of columns."""

    columns: tuple[int, ...]
    symbols: tuple[int, ...]

    def __post_init__(self) -> None:
        cols = tuple(int(c) for c in self.columns)
        syms = tuple(int(s) for s in self.symbols)
        if len(cols) != len(syms):
            raise ValueError("columns and symbols must have the same length")
        if any(c < 0 for c in cols):
            raise ValueError("column indices must be nonnegative")
        if any(a >= b for a, b in zip(cols, cols[1:])):
            raise ValueError(f"columns must be strictly increasing, got {cols}")
        if any(s < 0 for s in syms):
            raise ValueError("symbols must be nonnegative")
        object.__setattr__(self, "columns", cols)
        object.__setattr__(self, "symbols", syms)

    def valid_for(self, params: CAParams) -> bool:
        return (
            len(self.columns) == params.t
            and all(c < params.k for c in self.columns)
            and all(s < params.v for s in self.symbols)
        )

    def require_valid_for(self, params: CAParams) -> None:
        if not self.valid_for(params):
            raise ValueError(f"{self} is not a {params.t}-way interaction for {params}")


def colex_rank(columns: Sequence[int]) -> int:
    """Colexicographic rank of a strictly increasing index tuple.

    rank = sum C(c_i, i) over positions i = 1..t; independent of k.
    """
    return sum(math.comb(c, i) for i, c in enumerate(columns, start=1))


def colex_unrank(rank: int, t: int) -> tuple[int, ...]:
    """Inverse of colex_rank for subsets of size t."""
    cols = [0] * t
    r = rank
    for i in range(t, 0, -1):
        c = i - 1
        while math.comb(c + 1, i) <= r:
            c += 1
        cols[i - 1] = c
        r -= math.comb(c, i)
    return tuple(cols)


def colex_combinations(k: int, t: int) -> Iterator[tuple[int, ...]]:
    """All t-subsets of {0..k-1} in colexicographic order, lazily."""
    if t == 0:
        yield ()
        return
    for last in range(t - 1, k):
        for rest in colex_combinations(last, t - 1):
            yield rest + (last,)


def symbols_rank(symbols: Sequence[int], v: int) -> int:
    """Base-v value of a symbol tuple, first position most significant."""
    r = 0
    for s in symbols:
        r = r * v + s
    return r


def symbols_unrank(rank: int, t: int, v: int) -> tuple[int, ...]:
    out = [0] * t
    r = rank
    for i in range(t - 1, -1, -1):
        out[i] = r % v
        r //= v
    return tuple(out)


def covers(array: SymbolArray, interaction: Interaction) -> bool:
    """True iff some row of the array matches the interaction on all t columns."""
    interaction.require_valid_for(array.params)
    if array.n_rows == 0:
        return False
    cols = list(interaction.columns)
    syms = np.array(interaction.symbols, dtype=CELL_DTYPE)
    return bool((array.cells[:, cols] == syms).all(axis=1).any())


def interaction_rank(interaction: Interaction, params: CAParams) -> int:
    """Dense rank of an interaction in {0, ..., C(k,t)*v**t - 1}.

    Column sets are ordered colexicographically, symbol tuples as base-v
    numbers with the first symbol most significant.
    """
    interaction.require_valid_for(params)
    return colex_rank(interaction.columns) * params.tuple_count + symbols_rank(
        interaction.symbols, params.v
    )


def interaction_unrank(rank: int, params: CAParams) -> Interaction:
    """Inverse of interaction_rank."""
    if not 0 <= rank < params.interaction_space_size:
        raise ValueError(f"rank {rank} out of range for {params}")
    cset_rank, sym_rank = divmod(rank, params.tuple_count)
    return Interaction(
        colex_unrank(cset_rank, params.t),
        symbols_unrank(sym_rank, params.t, params.v),
    )
