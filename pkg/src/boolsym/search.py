"""Steepest-descent-style search for high nonlinearity inside an invariance class.

The state is the folded bit vector of an invariant function together with
its folded Walsh spectrum.  Every step scans all single-orbit flips,
scores each candidate spectrum with the configured cost, and moves to the
cheapest neighbor whose state has not been visited before -- even when
that is uphill.  The visited-state memory (Zobrist hashes of the folded
vector) is what lets the walk climb out of any basin instead of orbiting
a local minimum; excluding only the immediately preceding move measurably
strands the search in short limit cycles.

Costs are exact int64 (valid through n = 15):

    flatness: sum over masks of (W^2 - 2^n)^2, i.e. distance from a
              perfectly flat squared spectrum;
    peak:     sum over masks of max(0, |W| - T)^4 with T = 2^n - 2*target,
              penalizing only spectrum values that still block the target.

Runs are deterministic: each run's RNG stream is derived from
(rng_seed, run_index), ties break toward the lowest orbit index, and no
randomness enters a step.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .boolfn import FunctionReport, TruthTable, analyze
from .orbits import (
    FoldedFunction,
    FoldMatrix,
    GroupSpec,
    OrbitPartition,
    fold,
    fold_matrix,
    orbit_partition,
    unfold,
)

COSTS = {"flatness": _kernels.COST_FLATNESS, "peak": _kernels.COST_PEAK}

SEARCH_MAX_N = 15  # int64-exact costs need 2^(4n) headroom
_MAX_ITERATIONS = 1 << 25
_ZOBRIST_SEED = 0x9E3779B97F4A7C15


def _zobrist_keys(count: int) -> np.ndarray:
    rng = np.random.Generator(np.random.PCG64(_ZOBRIST_SEED))
    return rng.integers(1, 1 << 63, size=count, dtype=np.int64).astype(np.uint64)


def _default_peak_threshold(n: int) -> int:
    # spectrum peak of a function exactly at the bent / bent-concatenation bound
    return 1 << (n // 2 if n % 2 == 0 else (n + 1) // 2)


def cost(
    spectrum: np.ndarray,
    sizes: np.ndarray,
    kind: str = "flatness",
    target_nl: int | None = None,
) -> int:
    """Score a folded spectrum; lower is better and 0 is perfectly flat
    (flatness) or target reached (peak)."""
    try:
        cost_kind = COSTS[kind]
    except KeyError:
        raise ValueError(f"unknown cost {kind!r}, expected one of {sorted(COSTS)}")
    two_n = int(sizes.sum())
    n = two_n.bit_length() - 1
    if target_nl is not None:
        peak_t = two_n - 2 * target_nl
    else:
        peak_t = _default_peak_threshold(n)
    return int(
        _kernels.spectrum_cost(
            np.ascontiguousarray(spectrum, dtype=np.int64),
            np.ascontiguousarray(sizes, dtype=np.int64),
            two_n,
            cost_kind,
            peak_t,
        )
    )


@dataclass
class SearchState:
    """One walk's mutable state; build with from_partition() for real groups
    or directly from raw arrays for synthetic spaces."""

    matrix: np.ndarray  # int32 |G| x |G|
    sizes: np.ndarray  # int64
    bits: np.ndarray  # uint8, current folded function
    zobrist: np.ndarray  # uint64
    two_n: int
    cost_kind: int = _kernels.COST_FLATNESS
    peak_t: int = 0
    deviation_window: int = 0
    partition: OrbitPartition | None = None
    spectrum: np.ndarray = field(init=False)
    state_hash: int = field(init=False)
    visited: set[int] = field(init=False)
    last_move: int = field(init=False, default=-1)

    def __post_init__(self):
        signs = 1 - 2 * self.bits.astype(np.int64)
        self.spectrum = _kernels.folded_walsh_signs(self.matrix, signs)
        self.state_hash = 0
        for i in np.nonzero(self.bits)[0]:
            self.state_hash ^= int(self.zobrist[i])
        self.visited = {self.state_hash}

    @classmethod
    def from_partition(
        cls,
        fm: FoldMatrix,
        bits: np.ndarray,
        cost_kind: int = _kernels.COST_FLATNESS,
        peak_t: int = 0,
        deviation_window: int = 0,
    ) -> "SearchState":
        partition = fm.partition
        return cls(
            matrix=fm.m,
            sizes=partition.sizes,
            bits=np.array(bits, dtype=np.uint8),
            zobrist=_zobrist_keys(len(partition)),
            two_n=1 << partition.n,
            cost_kind=cost_kind,
            peak_t=peak_t,
            deviation_window=deviation_window,
            partition=partition,
        )

    @property
    def signs(self) -> np.ndarray:
        return 1 - 2 * self.bits.astype(np.int64)

    def peak(self) -> int:
        return int(np.max(np.abs(self.spectrum)))

    def nonlinearity(self) -> int:
        return (self.two_n - self.peak()) // 2

    def cost(self) -> int:
        return int(
            _kernels.spectrum_cost(
                self.spectrum, self.sizes, self.two_n, self.cost_kind, self.peak_t
            )
        )

    def neighbor_costs(self) -> np.ndarray:
        return _kernels.neighbor_costs(
            self.spectrum,
            self.matrix,
            self.signs,
            self.sizes,
            self.two_n,
            self.cost_kind,
            self.peak_t,
        )

    def _select(self, costs: np.ndarray) -> int:
        count = costs.size
        pick = -1
        fallback = -1
        for i in range(count):
            candidate = self.state_hash ^ int(self.zobrist[i])
            if candidate not in self.visited:
                if pick < 0 or costs[i] < costs[pick]:
                    pick = i
            elif i != self.last_move:
                if fallback < 0 or costs[i] < costs[fallback]:
                    fallback = i
        if pick < 0:
            return fallback if fallback >= 0 else self.last_move
        if self.deviation_window > 0:
            # among unvisited near-current-cost candidates, drive the actual
            # objective (smallest spectrum peak) instead of the raw cost
            budget = self.cost() + self.deviation_window
            best = -1
            best_key = None
            for i in range(count):
                if costs[i] > budget:
                    continue
                candidate = self.state_hash ^ int(self.zobrist[i])
                if candidate in self.visited:
                    continue
                flipped = self.spectrum - 2 * self.signs[i] * self.matrix[i].astype(
                    np.int64
                )
                key = (int(np.max(np.abs(flipped))), int(costs[i]), i)
                if best_key is None or key < best_key:
                    best, best_key = i, key
            if best >= 0:
                return best
        return pick

    def step(self) -> "SearchState":
        """Move to the selected neighbor (mutates and returns self)."""
        pick = self._select(self.neighbor_costs())
        self.state_hash ^= int(self.zobrist[pick])
        self.visited.add(self.state_hash)
        self.spectrum = self.spectrum - 2 * self.signs[pick] * self.matrix[
            pick
        ].astype(np.int64)
        bits = self.bits.copy()
        bits[pick] ^= 1
        self.bits = bits
        self.last_move = pick
        return self


@dataclass(frozen=True)
class SearchConfig:
    group: GroupSpec
    runs: int = 1
    max_iterations: int = 20_000
    rng_seed: int = 0
    cost_id: str = "flatness"
    deviation_window: int = 0
    initial_function: TruthTable | None = None
    initial_flips: int = 0
    target_nl: int | None = None
    record_trace: bool = False

    def __post_init__(self):
        if self.runs < 1 or self.max_iterations < 1:
            raise ValueError("runs and max_iterations must be >= 1")
        if self.max_iterations > _MAX_ITERATIONS:
            raise ValueError(f"max_iterations capped at {_MAX_ITERATIONS}")
        if self.cost_id not in COSTS:
            raise ValueError(f"unknown cost {self.cost_id!r}")
        if self.group.n > SEARCH_MAX_N:
            raise ValueError(f"search supports n <= {SEARCH_MAX_N}")


@dataclass(frozen=True)
class SearchResult:
    best_function: TruthTable
    report: FunctionReport
    run_index: int
    iteration_found: int
    elapsed_s: float
    trace: tuple[int, ...] | None = None


def perturb(
    tt: TruthTable, partition: OrbitPartition, flips: int, rng: np.random.Generator
) -> TruthTable:
    """Flip `flips` distinct random orbits of an invariant function."""
    count = len(partition)
    if flips > count:
        raise ValueError(f"cannot flip {flips} of {count} orbits")
    folded = fold(tt, partition)
    bits = folded.values.copy()
    if flips:
        chosen = rng.choice(count, size=flips, replace=False)
        bits[chosen] ^= 1
    return unfold(FoldedFunction(partition, bits))


def _run_rng(seed: int, run_index: int) -> np.random.Generator:
    return np.random.Generator(
        np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(run_index,)))
    )


def _initial_bits(
    cfg: SearchConfig, partition: OrbitPartition, rng: np.random.Generator
) -> np.ndarray:
    count = len(partition)
    if cfg.initial_function is not None:
        if cfg.initial_function.n != partition.n:
            raise ValueError("initial function has the wrong variable count")
        bits = fold(cfg.initial_function, partition).values.copy()
    else:
        bits = rng.integers(0, 2, size=count, dtype=np.uint8)
    if cfg.initial_flips:
        if cfg.initial_flips > count:
            raise ValueError(f"cannot flip {cfg.initial_flips} of {count} orbits")
        chosen = rng.choice(count, size=cfg.initial_flips, replace=False)
        bits[chosen] ^= 1
    return bits


def _peak_threshold(cfg: SearchConfig) -> int:
    if cfg.target_nl is not None:
        return (1 << cfg.group.n) - 2 * cfg.target_nl
    return _default_peak_threshold(cfg.group.n)


def _target_peak(cfg: SearchConfig) -> int:
    if cfg.target_nl is None:
        return -1  # unreachable: spectrum peaks are positive
    return (1 << cfg.group.n) - 2 * cfg.target_nl


def _drive_stepwise(
    state: SearchState, iters: int, target_peak: int
) -> tuple[np.ndarray, int, list[int], int]:
    best_peak = state.peak()
    best_bits = state.bits.copy()
    best_iter = 0
    trace = [best_peak]
    steps = 0
    if best_peak <= target_peak:
        return best_bits, best_iter, trace, steps
    for it in range(1, iters + 1):
        state.step()
        steps = it
        peak = state.peak()
        if peak < best_peak:
            best_peak = peak
            best_bits = state.bits.copy()
            best_iter = it
        trace.append(best_peak)
        if best_peak <= target_peak:
            break
    return best_bits, best_iter, trace, steps


def _execute_run(
    cfg: SearchConfig,
    partition: OrbitPartition,
    fm: FoldMatrix,
    zobrist: np.ndarray,
    run_index: int,
) -> SearchResult:
    rng = _run_rng(cfg.rng_seed, run_index)
    bits = _initial_bits(cfg, partition, rng)
    cost_kind = COSTS[cfg.cost_id]
    peak_t = _peak_threshold(cfg)
    target_peak = _target_peak(cfg)
    started = time.perf_counter()

    use_fused = _kernels.search_loop is not None and cfg.deviation_window == 0
    if use_fused:
        table_bits = max(10, (2 * (cfg.max_iterations + 2) - 1).bit_length())
        best_bits, best_iter, peak_trace, _ = _kernels.search_loop(
            fm.m,
            partition.sizes,
            zobrist,
            bits,
            cfg.max_iterations,
            1 << partition.n,
            cost_kind,
            peak_t,
            target_peak,
            table_bits,
        )
    else:
        state = SearchState.from_partition(
            fm, bits, cost_kind, peak_t, cfg.deviation_window
        )
        best_bits, best_iter, steps_trace, _ = _drive_stepwise(
            state, cfg.max_iterations, target_peak
        )
        peak_trace = np.array(steps_trace, dtype=np.int64)

    elapsed = time.perf_counter() - started
    best_table = unfold(FoldedFunction(partition, np.asarray(best_bits, np.uint8)))
    report = analyze(best_table)  # recomputed from scratch at emission
    two_n = 1 << partition.n
    nl_trace = (
        tuple(int(v) for v in (two_n - peak_trace) // 2) if cfg.record_trace else None
    )
    return SearchResult(
        best_function=best_table,
        report=report,
        run_index=run_index,
        iteration_found=int(best_iter),
        elapsed_s=elapsed,
        trace=nl_trace,
    )


def run(cfg: SearchConfig, workers: int | None = None) -> list[SearchResult]:
    """Execute cfg.runs independent walks; results sorted by nonlinearity
    (descending), then run index.  Output is a pure function of the config."""
    partition = orbit_partition(cfg.group)
    fm = fold_matrix(partition)
    zobrist = _zobrist_keys(len(partition))
    if cfg.initial_function is not None:
        fold(cfg.initial_function, partition)  # raises FoldError if not invariant

    indices = range(cfg.runs)
    if workers is not None and workers > 1 and cfg.runs > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(
                pool.map(
                    lambda i: _execute_run(cfg, partition, fm, zobrist, i), indices
                )
            )
    else:
        results = [_execute_run(cfg, partition, fm, zobrist, i) for i in indices]
    results.sort(key=lambda r: (-r.report.nonlinearity, r.run_index))
    return results


def summarize(results: list[SearchResult]) -> dict[int, int]:
    """Achieved nonlinearity -> number of runs, best first."""
    counts: dict[int, int] = {}
    for result in sorted(results, key=lambda r: -r.report.nonlinearity):
        nl = result.report.nonlinearity
        counts[nl] = counts.get(nl, 0) + 1
    return counts
