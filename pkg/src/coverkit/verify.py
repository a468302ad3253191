"""Independent, clarity-first verification of coverage.

``full_check`` and ``orbit_check`` are the trusted base of the package:
plain row loops filling one bitmap per column t-set, deliberately sharing
no coverage-counting code with the numpy-vectorized paths in ``construct``.
Disagreement between the two sides on any input is a bug of the highest
severity, and the test suite cross-checks them.

``exhaustive_can`` is a ground-truth oracle for tiny parameters: a
backtracking search over canonical-form arrays (first row all zeros, rows
strictly increasing, per-column symbols introduced in order) that finds the
exact minimum array size or proves none exists within a row limit.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from . import limits
from .core import CAParams, ColumnSet, Interaction, SymbolArray, colex_combinations
from .errors import BudgetExceededError
from .groups import OrbitTable

__all__ = [
    "CoverageReport",
    "OrbitCoverageReport",
    "full_check",
    "orbit_check",
    "exhaustive_can",
]


@dataclass(frozen=True)
class CoverageReport:
    is_covering: bool
    uncovered_count: int
    first_witness: Interaction | None


@dataclass(frozen=True)
class OrbitCoverageReport:
    all_covered: bool
    first_uncovered: tuple[ColumnSet, int] | None


def _tuple_index(row: tuple[int, ...], cols: tuple[int, ...], v: int) -> int:
    idx = 0
    for c in cols:
        idx = idx * v + row[c]
    return idx


def _unrank_symbols(idx: int, t: int, v: int) -> tuple[int, ...]:
    out = [0] * t
    for i in range(t - 1, -1, -1):
        out[i] = idx % v
        idx //= v
    return tuple(out)


def _check_column_set(
    rows: list[tuple[int, ...]], cols: tuple[int, ...], t: int, v: int
) -> tuple[int, int | None]:
    """(uncovered count, first uncovered tuple index) for one column set."""
    vt = v**t
    mask = bytearray(vt)
    for row in rows:
        mask[_tuple_index(row, cols, v)] = 1
    missing = vt - sum(mask)
    if missing == 0:
        return 0, None
    return missing, mask.index(0)


def full_check(array: SymbolArray, *, workers: int = 1) -> CoverageReport:
    """Check every column t-set against its v**t bitmap, one row pass each."""
    params = array.params
    t, v = params.t, params.v
    limits.check_table_bytes(params.tuple_count, 1, "verifier bitmap")
    limits.check_column_sets(params.k, t, "full_check")
    rows = [tuple(int(x) for x in r) for r in array.cells]
    subsets = list(colex_combinations(params.k, t))

    if workers <= 1:
        results = [_check_column_set(rows, cols, t, v) for cols in subsets]
    else:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda cols: _check_column_set(rows, cols, t, v), subsets))

    uncovered = 0
    first: Interaction | None = None
    for cols, (missing, first_idx) in zip(subsets, results):
        uncovered += missing
        if first is None and first_idx is not None:
            first = Interaction(cols, _unrank_symbols(first_idx, t, v))
    return CoverageReport(uncovered == 0, uncovered, first)


def orbit_check(
    array: SymbolArray, table: OrbitTable, *, full_only: bool = False
) -> OrbitCoverageReport:
    """Check that every (full-length, if full_only) orbit is hit on every
    column t-set: some row's symbol tuple on those columns lies in it."""
    params = array.params
    t, v = params.t, params.v
    if table.action.degree != v:
        raise ValueError(
            f"orbit table degree {table.action.degree} does not match v={v}"
        )
    if table.t != t:
        raise ValueError(f"orbit table strength {table.t} does not match t={t}")
    required = [
        oid
        for oid in range(table.n_orbits)
        if not full_only or table.is_full(oid)
    ]
    rows = [tuple(int(x) for x in r) for r in array.cells]
    for cols in colex_combinations(params.k, t):
        seen = bytearray(table.n_orbits)
        for row in rows:
            seen[int(table.orbit_id_of[_tuple_index(row, cols, v)])] = 1
        for oid in required:
            if not seen[oid]:
                return OrbitCoverageReport(False, (ColumnSet(cols), oid))
    return OrbitCoverageReport(True, None)


def exhaustive_can(
    params: CAParams, n_max: int, *, node_budget: int = 5_000_000
) -> int | None:
    """Smallest N <= n_max admitting a covering array, by exhaustive search.

    Returns None when no covering array with at most n_max rows exists.
    Raises BudgetExceededError when the node budget runs out first, which is
    a distinct outcome from a proven "none".

    Symmetry reductions, each reachable by column symbol renaming and row
    sorting: the first row is all zeros, rows are strictly increasing as
    tuples, and within each column a symbol s > 0 may appear only after
    s - 1 has appeared above.
    """
    t, k, v = params.t, params.k, params.v
    if v**k > 1 << 16:
        raise BudgetExceededError(
            f"row space v**k = {v**k} is beyond exhaustive search"
        )
    all_rows = list(product(range(v), repeat=k))
    subsets = list(colex_combinations(k, t))
    vt = v**t

    # bit i*vt + j  <=>  column set i covers symbol tuple j
    row_masks = []
    for row in all_rows:
        mask = 0
        for i, cols in enumerate(subsets):
            mask |= 1 << (i * vt + _tuple_index(row, cols, v))
        row_masks.append(mask)
    target = (1 << (len(subsets) * vt)) - 1
    per_row_gain = len(subsets)

    budget = [node_budget]

    def admissible(row: tuple[int, ...], colmax: tuple[int, ...]) -> bool:
        return all(s <= m + 1 for s, m in zip(row, colmax))

    def search(n_remaining: int, last: int, covered: int, colmax: tuple[int, ...]) -> bool:
        if covered == target:
            return True
        if n_remaining == 0:
            return False
        if (target & ~covered).bit_count() > n_remaining * per_row_gain:
            return False
        for idx in range(last + 1, len(all_rows)):
            if budget[0] <= 0:
                raise BudgetExceededError("exhaustive search budget exhausted")
            budget[0] -= 1
            row = all_rows[idx]
            if not admissible(row, colmax):
                continue
            new_colmax = tuple(max(m, s) for m, s in zip(colmax, row))
            if search(n_remaining - 1, idx, covered | row_masks[idx], new_colmax):
                return True
        return False

    effective_max = min(n_max, v**k)
    for n in range(vt, effective_max + 1):
        if search(n - 1, 0, row_masks[0], tuple(0 for _ in range(k))):
            return n
    return None
