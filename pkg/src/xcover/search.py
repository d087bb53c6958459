"""Algorithm X search with two interchangeable engines.

Both engines explore the same tree in the same order: at every node the
uncovered primary column with the fewest live rows is branched on (ties go
to the smallest column ordinal), and its rows are tried in ascending row id.
They therefore report identical solution sequences.  Their update counters
measure different things and are only comparable within one engine:

* ``naive`` counts every node removed from the live matrix, one per
  (row, column) incidence, as rows are deleted;
* ``dlx`` counts every node unlinked from a column list.
"""

from __future__ import annotations

import enum
import itertools
import sys
import time
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from . import dlx
from .errors import TooLarge
from .model import Instance, Solution, check_solution

__all__ = [
    "EngineKind",
    "HaltReason",
    "NaiveState",
    "SearchLimits",
    "SearchStats",
    "brute_force_solutions",
    "check_solution",
    "count_solutions",
    "solve",
]


class EngineKind(enum.Enum):
    NAIVE = "naive"
    DLX = "dlx"


class HaltReason(enum.Enum):
    EXHAUSTED = "exhausted"
    SOLUTION_LIMIT = "solution_limit"
    UPDATE_LIMIT = "update_limit"
    TIME_LIMIT = "time_limit"


@dataclass(frozen=True)
class SearchLimits:
    """``None`` means unbounded."""

    max_solutions: int | None = None
    max_updates: int | None = None
    time_budget: float | None = None  # seconds

    def __post_init__(self):
        for name in ("max_solutions", "max_updates", "time_budget"):
            value = getattr(self, name)
            if value is not None and value <= 0:
                raise ValueError(f"{name} must be positive, got {value}")


@dataclass
class SearchStats:
    updates_per_level: dict[int, int] = field(default_factory=dict)
    total_updates: int = 0
    solutions_found: int = 0
    max_depth: int = 0
    wall_time: float = 0.0
    halted_by: HaltReason = HaltReason.EXHAUSTED

    @property
    def updates_per_second(self) -> float:
        return self.total_updates / self.wall_time if self.wall_time > 0 else 0.0


Emit = Callable[[Solution], object]

POLICIES = {"mrv": 0, "first": 1}


class _Halt(Exception):
    def __init__(self, reason: HaltReason):
        self.reason = reason


class NaiveState:
    """Live-matrix bookkeeping for the naive engine.

    Mirrors the textbook procedure directly: selecting a row deletes its
    nodes, then deletes every row meeting any of its columns; backtracking
    replays an undo log in reverse so the live matrix returns to exactly the
    state it had before.
    """

    def __init__(self, instance: Instance, policy: str = "mrv"):
        self.rows = instance.rows
        self.col_rows: list[list[int]] = [[] for _ in range(instance.n_columns)]
        for i, cols in enumerate(self.rows):
            for c in cols:
                self.col_rows[c].append(i)
        self.alive = [True] * len(self.rows)
        self.count = [len(rs) for rs in self.col_rows]
        self.covered = [False] * instance.n_columns
        self.primary = instance.primary_columns
        self.first_only = POLICIES[policy] == 1

    def choose_column(self) -> int | None:
        """Uncovered primary column with the fewest live rows, or None if all are covered."""
        best = None
        best_count = 0
        for c in self.primary:
            if self.covered[c]:
                continue
            if self.first_only:
                return c
            n = self.count[c]
            if best is None or n < best_count:
                best, best_count = c, n
                if n == 0:
                    break
        return best

    def remove_row(self, i: int) -> int:
        self.alive[i] = False
        for c in self.rows[i]:
            self.count[c] -= 1
        return len(self.rows[i])

    def restore_row(self, i: int) -> None:
        self.alive[i] = True
        for c in self.rows[i]:
            self.count[c] += 1

    def select(self, r: int, log: list[int]) -> int:
        """Delete row ``r`` and every row clashing with it; returns node removals."""
        updates = self.remove_row(r)
        log.append(r)
        for j in self.rows[r]:
            self.covered[j] = True
            for i in self.col_rows[j]:
                if self.alive[i]:
                    updates += self.remove_row(i)
                    log.append(i)
        return updates

    def deselect(self, r: int, log: list[int]) -> None:
        for i in reversed(log):
            self.restore_row(i)
        for j in self.rows[r]:
            self.covered[j] = False

    def snapshot(self) -> tuple:
        return (tuple(self.alive), tuple(self.count), tuple(self.covered))


def _solve_naive(instance, limits, emit, stats, policy, deadline):
    state = NaiveState(instance, policy)
    chosen: list[int] = []
    levels = stats.updates_per_level
    nodes = 0

    def search(k: int) -> None:
        nonlocal nodes
        if k > stats.max_depth:
            stats.max_depth = k
        nodes += 1
        if deadline is not None and nodes & 1023 == 0 and time.perf_counter() > deadline:
            raise _Halt(HaltReason.TIME_LIMIT)
        c = state.choose_column()
        if c is None:
            stats.solutions_found += 1
            if emit is not None:
                emit(instance.solution([r + 1 for r in chosen]))
            if limits.max_solutions is not None and stats.solutions_found >= limits.max_solutions:
                raise _Halt(HaltReason.SOLUTION_LIMIT)
            return
        candidates = [i for i in state.col_rows[c] if state.alive[i]]
        for r in candidates:
            log: list[int] = []
            n = state.select(r, log)
            levels[k] = levels.get(k, 0) + n
            stats.total_updates += n
            chosen.append(r)
            try:
                if limits.max_updates is not None and stats.total_updates >= limits.max_updates:
                    raise _Halt(HaltReason.UPDATE_LIMIT)
                search(k + 1)
            finally:
                chosen.pop()
                state.deselect(r, log)

    need = len(state.primary) + 100
    if sys.getrecursionlimit() < need:
        sys.setrecursionlimit(need)
    before = state.snapshot()
    try:
        search(0)
    except _Halt as halt:
        stats.halted_by = halt.reason
    assert state.snapshot() == before, "naive engine failed to restore its state"


# loop iterations per compiled call before control returns for a clock check
_STEP_CHUNK = 1 << 22


def _solve_dlx(instance, limits, emit, stats, policy, deadline, arena=None):
    arena = arena or dlx.Arena(instance)
    depth = sum(instance.is_primary(c) for c in range(instance.n_columns)) + 1
    chosen = np.zeros(depth, dtype=np.int32)
    current = np.zeros(depth, dtype=np.int32)
    level_updates = np.zeros(depth, dtype=np.int64)
    ctrl = np.zeros(dlx.CTRL_SIZE, dtype=np.int64)
    ctrl[dlx.PC] = dlx.ENTER
    ctrl[dlx.MAX_UPDATES] = -1 if limits.max_updates is None else limits.max_updates
    ctrl[dlx.POLICY] = POLICIES[policy]
    ctrl[dlx.STOP_EACH] = 1 if emit is not None else 0
    ctrl[dlx.MAX_SOLUTIONS] = -1 if limits.max_solutions is None else limits.max_solutions
    links = arena.links

    while True:
        status = dlx.search(*links, chosen, current, level_updates, ctrl, _STEP_CHUNK)
        if status == dlx.SOLUTION:
            lvl = int(ctrl[dlx.LEVEL])
            rows = [int(arena.row[current[m]]) for m in range(lvl)]
            emit(instance.solution(rows))
            if limits.max_solutions is not None and ctrl[dlx.SOLUTIONS] >= limits.max_solutions:
                stats.halted_by = HaltReason.SOLUTION_LIMIT
                break
            continue
        if status == dlx.EXHAUSTED:
            break
        if status == dlx.SOLUTION_LIMIT:
            stats.halted_by = HaltReason.SOLUTION_LIMIT
            break
        if status == dlx.UPDATE_LIMIT:
            stats.halted_by = HaltReason.UPDATE_LIMIT
            break
        if deadline is not None and time.perf_counter() > deadline:
            stats.halted_by = HaltReason.TIME_LIMIT
            break
    dlx.unwind(*links, chosen, current, ctrl)

    stats.solutions_found = int(ctrl[dlx.SOLUTIONS])
    stats.max_depth = int(ctrl[dlx.MAX_DEPTH])
    stats.total_updates = int(ctrl[dlx.TOTAL])
    stats.updates_per_level.update(
        {k: int(v) for k, v in enumerate(level_updates) if v}
    )


def solve(
    instance: Instance,
    engine: EngineKind | str = EngineKind.DLX,
    limits: SearchLimits | None = None,
    emit: Emit | None = None,
    policy: str = "mrv",
) -> SearchStats:
    """Enumerate exact covers of ``instance``, calling ``emit`` once per cover.

    ``policy`` is ``"mrv"`` (fewest live rows) or ``"first"`` (first
    uncovered primary column); it changes the work done, never the set of
    solutions.
    """
    engine = EngineKind(engine)
    if policy not in POLICIES:
        raise ValueError(f"unknown column policy {policy!r}")
    limits = limits or SearchLimits()
    stats = SearchStats()
    start = time.perf_counter()
    deadline = None if limits.time_budget is None else start + limits.time_budget
    if engine is EngineKind.NAIVE:
        _solve_naive(instance, limits, emit, stats, policy, deadline)
    else:
        _solve_dlx(instance, limits, emit, stats, policy, deadline)
    stats.wall_time = time.perf_counter() - start
    return stats


def count_solutions(instance: Instance, engine: EngineKind | str = EngineKind.DLX) -> int:
    return solve(instance, engine).solutions_found


def solutions(instance: Instance, engine: EngineKind | str = EngineKind.DLX, **kw) -> list[Solution]:
    out: list[Solution] = []
    solve(instance, engine, emit=out.append, **kw)
    return out


def brute_force_solutions(instance: Instance) -> set[frozenset[int]]:
    """Every subset of rows that is an exact cover, by exhaustive enumeration.

    A row that touches no primary column is never part of a cover here:
    Algorithm X only selects rows through the primary column it branches
    on, so such rows could only pad an existing cover.

    All 2**R subsets are scored at once: each subset's column union and
    total size are built by doubling over the rows, and a subset is a cover
    when no column is hit twice (union size equals total size) and every
    primary column is in the union.
    """
    n = instance.n_rows
    if n > 24:
        raise TooLarge(f"{n} rows; brute force is limited to 24")
    masks = [sum(1 << c for c in cols) for cols in instance.rows]
    if instance.n_columns > 62:
        # too wide for machine words; fall back to one check per subset
        useful = [r for r in range(1, n + 1) if any(instance.is_primary(c) for c in instance.row(r))]
        return {
            frozenset(combo)
            for size in range(len(useful) + 1)
            for combo in itertools.combinations(useful, size)
            if check_solution(instance, combo)
        }
    union = np.zeros(1 << n, dtype=np.int64)
    total = np.zeros(1 << n, dtype=np.int64)
    for i, m in enumerate(masks):
        half = 1 << i
        union[half : 2 * half] = union[:half] | m
        total[half : 2 * half] = total[:half] + m.bit_count()
    popcount = np.zeros(1 << n, dtype=np.int64)
    bits = union.copy()
    while bits.any():
        popcount += bits & 1
        bits >>= 1
    need = sum(1 << c for c in instance.primary_columns)
    ok = (popcount == total) & ((union & need) == need)
    idle = sum(1 << i for i, m in enumerate(masks) if not m & need)
    if idle:
        ok &= (np.arange(1 << n, dtype=np.int64) & idle) == 0
    return {
        frozenset(i + 1 for i in range(n) if s >> i & 1) for s in np.flatnonzero(ok).tolist()
    }
