"""Randomized covering array construction.

Three builders realize the bound families constructively:

* ``two_stage_build``    - draw random arrays of the optimal stage-1 size
  until the uncovered count is within target, then patch each surviving
  uncovered interaction with one dedicated row (or greedy density rows).
* ``moser_tardos_build`` - maintain a random n x k array and, scanning
  column t-sets in a fixed order, resample the columns of the first set
  with an uncovered full-length orbit until no such set remains; then
  develop over the group and patch short orbits with constant rows.
  Applies to the cyclic and Frobenius actions.
* ``pgl_build``          - the sharply 3-transitive variant: resampling
  covers the full-length orbits, a single binary covering array replicated
  over every symbol pair covers the two-symbol orbits, and constant rows
  cover the rest.

Every builder is deterministic given (params, config): the seed fully
drives all random draws.  No step ever materializes the set of all
C(k,t) * v**t interactions; coverage is streamed one column t-set at a
time with a single v**t-sized table in flight.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from typing import Literal, NamedTuple

import numpy as np

from . import bounds, limits
from ._numeric import floor_scaled_power
from .core import (
    CAParams,
    CELL_DTYPE,
    Interaction,
    SymbolArray,
    colex_combinations,
    symbols_unrank,
)
from .groups import (
    GroupAction,
    OrbitTable,
    constant_rows,
    develop,
    enumerate_orbits,
    make_cyclic,
    make_pgl,
)

__all__ = [
    "DEFAULT_SEED",
    "BuildConfig",
    "BuildLog",
    "UncoveredScan",
    "random_array",
    "count_uncovered",
    "uncovered_interactions",
    "two_stage_build",
    "density_row",
    "density_build",
    "moser_tardos_build",
    "pgl_build",
]

DEFAULT_SEED = 1729


@dataclass(frozen=True)
class BuildConfig:
    """Knobs shared by the builders.  The seed fully determines all draws."""

    seed: int = DEFAULT_SEED
    max_stage1_attempts: int = 1000
    resample_step_cap: int = 10_000
    dependence_estimate: bounds.Dependence = "simple"
    second_stage: Literal["one_row_each", "density_greedy"] = "one_row_each"
    stage1_target: Literal["expectation", "tuple_budget"] = "expectation"
    pair_strategy: Literal["two_stage", "mt_cyclic"] = "two_stage"
    n_override: int | None = None
    workers: int = 1

    def __post_init__(self) -> None:
        if self.max_stage1_attempts < 1:
            raise ValueError("need at least one stage-1 attempt")
        if self.resample_step_cap < 0:
            raise ValueError("resample cap must be nonnegative")


@dataclass
class BuildLog:
    """What a builder did: row accounting, attempts, resamples, timings.

    total_rows always satisfies
    stage1_rows * group_order + short_orbit_rows + stage2_rows.
    """

    strategy: str
    stage1_rows: int = 0
    stage1_attempts: int = 0
    uncovered_after_stage1: int = 0
    resample_count: int = 0
    stage2_rows: int = 0
    short_orbit_rows: int = 0
    group_order: int = 1
    total_rows: int = 0
    success: bool = True
    failure_reason: str | None = None
    elapsed: dict[str, float] = field(default_factory=dict)
    resample_witness: list[tuple[int, int]] = field(default_factory=list)

    def summary_lines(self) -> list[str]:
        lines = [
            f"strategy           {self.strategy}",
            f"stage1 rows        {self.stage1_rows} x{self.group_order} (attempts {self.stage1_attempts})",
            f"uncovered after s1 {self.uncovered_after_stage1}",
            f"resamples          {self.resample_count}",
            f"stage2 rows        {self.stage2_rows}",
            f"short-orbit rows   {self.short_orbit_rows}",
            f"total rows         {self.total_rows}",
            f"success            {self.success}"
            + (f" ({self.failure_reason})" if self.failure_reason else ""),
        ]
        for stage, secs in self.elapsed.items():
            lines.append(f"elapsed {stage:<10} {secs:.3f}s")
        return lines


class UncoveredScan(NamedTuple):
    interactions: list[Interaction]
    truncated: bool


def random_array(params: CAParams, n: int, seed: int) -> SymbolArray:
    """n x k array with cells i.i.d. uniform on 0..v-1, deterministic in seed."""
    if n < 0:
        raise ValueError("row count must be nonnegative")
    rng = np.random.default_rng(seed)
    cells = rng.integers(0, params.v, size=(n, params.k), dtype=CELL_DTYPE)
    return SymbolArray(params, cells)


def _column_weights(params: CAParams) -> np.ndarray:
    v, t = params.v, params.t
    return np.array([v ** (t - 1 - i) for i in range(t)], dtype=np.int64)


def _subset_uncovered(
    cells: np.ndarray, cols: tuple[int, ...], weights: np.ndarray, vt: int
) -> int:
    ranks = cells[:, cols].astype(np.int64) @ weights
    seen = np.zeros(vt, dtype=bool)
    seen[ranks] = True
    return vt - int(np.count_nonzero(seen))


def count_uncovered(array: SymbolArray, *, workers: int = 1) -> int:
    """Exact number of uncovered interactions, streamed one column t-set at
    a time (one v**t table in flight, never a global interaction list)."""
    params = array.params
    vt = params.tuple_count
    limits.check_table_bytes(vt, 1, "coverage mask")
    limits.check_column_sets(params.k, params.t, "count_uncovered")
    weights = _column_weights(params)
    subsets = colex_combinations(params.k, params.t)
    if workers <= 1:
        return sum(
            _subset_uncovered(array.cells, cols, weights, vt) for cols in subsets
        )
    from concurrent.futures import ThreadPoolExecutor

    chunks: list[list[tuple[int, ...]]] = [[] for _ in range(workers)]
    for i, cols in enumerate(subsets):
        chunks[i % workers].append(cols)

    def total(chunk: list[tuple[int, ...]]) -> int:
        return sum(_subset_uncovered(array.cells, cols, weights, vt) for cols in chunk)

    with ThreadPoolExecutor(max_workers=workers) as pool:
        return sum(pool.map(total, chunks))


def uncovered_interactions(array: SymbolArray, limit: int) -> UncoveredScan:
    """The uncovered interactions in rank order, truncated at ``limit``.

    Truncation is reported, never silent: ``truncated`` is True iff at
    least one further uncovered interaction exists beyond the returned ones.
    """
    if limit < 0:
        raise ValueError("limit must be nonnegative")
    params = array.params
    vt = params.tuple_count
    limits.check_table_bytes(vt, 1, "coverage mask")
    limits.check_column_sets(params.k, params.t, "uncovered_interactions")
    weights = _column_weights(params)
    out: list[Interaction] = []
    for cols in colex_combinations(params.k, params.t):
        ranks = array.cells[:, cols].astype(np.int64) @ weights
        seen = np.zeros(vt, dtype=bool)
        seen[ranks] = True
        for tup_rank in np.flatnonzero(~seen):
            if len(out) == limit:
                return UncoveredScan(out, True)
            out.append(Interaction(cols, symbols_unrank(int(tup_rank), params.t, params.v)))
    return UncoveredScan(out, False)


def _stage1_target(params: CAParams, n: int, mode: str) -> int:
    if mode == "tuple_budget":
        return params.tuple_count
    vt = params.tuple_count
    return floor_scaled_power(params.interaction_space_size, vt - 1, vt, n)


def two_stage_build(
    params: CAParams, config: BuildConfig | None = None
) -> tuple[SymbolArray, BuildLog]:
    """Random stage-1 array of the optimal size, retried until its uncovered
    count meets the target, then one patch row per uncovered interaction
    (cells outside the interaction filled uniformly at random) or greedy
    density rows, per config."""
    config = config or BuildConfig()
    if config.n_override is not None:
        n = config.n_override
    else:
        n = bounds.two_stage_bound(params).stage1_rows
    target = _stage1_target(params, n, config.stage1_target)
    rng = np.random.default_rng(config.seed)
    log = BuildLog(strategy="two_stage", stage1_rows=n)

    t0 = time.perf_counter()
    best_cells = None
    best_uncovered = None
    for attempt in range(1, config.max_stage1_attempts + 1):
        cells = rng.integers(0, params.v, size=(n, params.k), dtype=CELL_DTYPE)
        u = count_uncovered(SymbolArray(params, cells), workers=config.workers)
        if best_uncovered is None or u < best_uncovered:
            best_cells, best_uncovered = cells, u
        if u <= target:
            break
    else:
        log.success = False
        log.failure_reason = (
            f"stage 1 missed target {target} in {config.max_stage1_attempts} attempts"
        )
    log.stage1_attempts = attempt
    log.uncovered_after_stage1 = best_uncovered
    log.elapsed["stage1"] = time.perf_counter() - t0

    t1 = time.perf_counter()
    stage1 = SymbolArray(params, best_cells)
    if config.second_stage == "density_greedy":
        result = density_build(stage1)
        patch_rows = result.n_rows - n
    else:
        scan = uncovered_interactions(stage1, limit=best_uncovered)
        assert not scan.truncated
        patches = np.empty((len(scan.interactions), params.k), dtype=CELL_DTYPE)
        for i, inter in enumerate(scan.interactions):
            row = rng.integers(0, params.v, size=params.k, dtype=CELL_DTYPE)
            row[list(inter.columns)] = inter.symbols
            patches[i] = row
        result = SymbolArray(params, np.vstack([stage1.cells, patches]))
        patch_rows = len(scan.interactions)
    log.stage2_rows = patch_rows
    log.total_rows = result.n_rows
    log.elapsed["stage2"] = time.perf_counter() - t1
    return result, log


def density_row(array: SymbolArray) -> np.ndarray | None:
    """One greedy row: fix cells left to right, each chosen to minimize the
    conditional expected number of interactions left uncovered.

    Scoring is exact integer arithmetic: an uncovered interaction matching
    the fixed prefix contributes v**(fixed positions) to its symbol's score,
    i.e. the coverage probability scaled by v**t.  Ties break toward the
    smaller symbol.  Returns None when the array already covers everything.
    """
    params = array.params
    t, k, v = params.t, params.k, params.v
    vt = params.tuple_count
    weights = _column_weights(params)
    if count_uncovered(array) == 0:
        return None

    row = np.zeros(k, dtype=CELL_DTYPE)
    for j in range(k):
        scores = [0] * v
        for cols in colex_combinations(k, t):
            if j not in cols:
                continue
            pos_j = cols.index(j)
            ranks = array.cells[:, cols].astype(np.int64) @ weights
            seen = np.zeros(vt, dtype=bool)
            seen[ranks] = True
            fixed = [(i, c) for i, c in enumerate(cols) if c < j]
            weight = v ** (len(fixed) + 1)
            for tup_rank in np.flatnonzero(~seen):
                tup = symbols_unrank(int(tup_rank), t, v)
                if all(tup[i] == row[c] for i, c in fixed):
                    scores[tup[pos_j]] += weight
        row[j] = max(range(v), key=lambda s: (scores[s], -s))
    return row


def density_build(array: SymbolArray) -> SymbolArray:
    """Append greedy density rows until the array covers everything."""
    current = array
    while True:
        row = density_row(current)
        if row is None:
            return current
        current = SymbolArray(
            current.params, np.vstack([current.cells, row[None, :]])
        )


def _resample_full_orbits(
    params: CAParams,
    table: OrbitTable,
    n: int,
    rng: np.random.Generator,
    cap: int,
    log: BuildLog,
) -> np.ndarray:
    """Core resampling loop: an n x k random array, rescanned from the start
    after each resample, until every full-length orbit is covered on every
    column t-set.  Returns the array; sets failure flags on the log if the
    resample cap is hit.

    Orbit coverage is decided from the OrbitTable alone: per column set, a
    boolean table indexed by orbit id (memory O(v**t + n*k))."""
    k, t = params.k, params.t
    cells = rng.integers(0, params.v, size=(n, k), dtype=CELL_DTYPE)
    weights = _column_weights(params)
    orbit_of = table.orbit_id_of
    full_ids = np.array(table.full_orbit_ids, dtype=np.int64)
    if full_ids.size == 0:
        return cells
    while True:
        offending = None
        for pos, cols in enumerate(colex_combinations(k, t)):
            ranks = cells[:, cols].astype(np.int64) @ weights
            seen = np.zeros(table.n_orbits, dtype=bool)
            seen[orbit_of[ranks]] = True
            if not seen[full_ids].all():
                offending = (pos, cols)
                break
        if offending is None:
            return cells
        if log.resample_count >= cap:
            log.success = False
            log.failure_reason = (
                f"resample cap {cap} reached at scan position {offending[0]}"
            )
            return cells
        pos, cols = offending
        for c in cols:
            cells[:, c] = rng.integers(0, params.v, size=n, dtype=CELL_DTYPE)
        log.resample_count += 1
        log.resample_witness.append((pos, log.resample_count))


def _stage1_rows_for_action(
    params: CAParams, action: GroupAction, config: BuildConfig
) -> int:
    if config.n_override is not None:
        return config.n_override
    if action.kind == "cyclic":
        return bounds.cyclic_lll_bound(params, config.dependence_estimate).stage1_rows
    if action.kind == "frobenius":
        return bounds.frobenius_lll_bound(params, config.dependence_estimate).stage1_rows
    if action.kind == "pgl":
        return bounds.pgl_lll_bound(params, config.dependence_estimate).stage1_rows
    raise ValueError(f"no bound-level row count for action kind {action.kind!r}")


def moser_tardos_build(
    params: CAParams, action: GroupAction, config: BuildConfig | None = None
) -> tuple[SymbolArray, BuildLog]:
    """Resample until all full-length orbits are covered, then develop over
    the group and append constant rows for the short orbit (Frobenius).

    Accepts the cyclic and Frobenius actions, whose orbits are exhausted by
    full orbits plus constants; use ``pgl_build`` for the 3-transitive
    action, which additionally needs the per-pair binary arrays."""
    if action.kind not in ("cyclic", "frobenius"):
        raise ValueError(
            f"moser_tardos_build covers full orbits and constants only; "
            f"got action kind {action.kind!r} (use pgl_build for pgl)"
        )
    if action.degree != params.v:
        raise ValueError(f"action degree {action.degree} does not match v={params.v}")
    config = config or BuildConfig()
    log = BuildLog(strategy=f"mt_{action.kind}", group_order=action.order)
    table = enumerate_orbits(action, params.t)
    n = _stage1_rows_for_action(params, action, config)
    log.stage1_rows = n
    rng = np.random.default_rng(config.seed)

    t0 = time.perf_counter()
    cells = _resample_full_orbits(params, table, n, rng, config.resample_step_cap, log)
    log.elapsed["resample"] = time.perf_counter() - t0

    t1 = time.perf_counter()
    developed = develop(SymbolArray(params, cells), action)
    pieces = [developed.cells]
    if action.kind == "frobenius":
        pieces.append(constant_rows(params).cells)
        log.short_orbit_rows = params.v
    result = SymbolArray(params, np.vstack(pieces))
    log.total_rows = result.n_rows
    log.elapsed["develop"] = time.perf_counter() - t1
    return result, log


def pgl_build(
    params: CAParams, config: BuildConfig | None = None
) -> tuple[SymbolArray, BuildLog]:
    """Sharply 3-transitive construction: resampled full orbits developed
    over the group, one binary covering array mapped onto every symbol
    pair, and v constant rows."""
    config = config or BuildConfig()
    action = make_pgl(params.v)
    log = BuildLog(strategy="pgl", group_order=action.order)
    seeds = np.random.SeedSequence(config.seed).spawn(2)
    seed_full = int(seeds[0].generate_state(1)[0])
    seed_pairs = int(seeds[1].generate_state(1)[0])

    n = _stage1_rows_for_action(params, action, config)
    log.stage1_rows = n
    t0 = time.perf_counter()
    if n > 0:
        table = enumerate_orbits(action, params.t)
        rng = np.random.default_rng(seed_full)
        cells = _resample_full_orbits(
            params, table, n, rng, config.resample_step_cap, log
        )
        developed = develop(SymbolArray(params, cells), action).cells
    else:
        developed = np.empty((0, params.k), dtype=CELL_DTYPE)
    log.elapsed["resample"] = time.perf_counter() - t0

    t1 = time.perf_counter()
    binary_params = CAParams(params.t, params.k, 2)
    pair_config = replace(config, seed=seed_pairs, n_override=None)
    if config.pair_strategy == "mt_cyclic":
        binary, blog = moser_tardos_build(binary_params, make_cyclic(2), pair_config)
    else:
        binary, blog = two_stage_build(binary_params, pair_config)
    if not blog.success:
        log.success = False
        log.failure_reason = f"binary stage: {blog.failure_reason}"
    pair_blocks = []
    for a, b in ((a, b) for a in range(params.v) for b in range(a + 1, params.v)):
        mapped = np.where(binary.cells == 0, a, b).astype(CELL_DTYPE)
        pair_blocks.append(mapped)
    pairs = np.vstack(pair_blocks)
    log.stage2_rows = pairs.shape[0]
    log.elapsed["pairs"] = time.perf_counter() - t1

    consts = constant_rows(params).cells
    log.short_orbit_rows = params.v
    result = SymbolArray(params, np.vstack([developed, pairs, consts]))
    log.total_rows = result.n_rows
    return result, log
