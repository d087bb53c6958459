"""Sudoku of order k (an n x n grid, n = k*k) as exact cover.

Adds a box family to the Latin encoding: candidate (i, j, v) is the row
``ij RiNv CjNv BbNv``.  Boxes are numbered row-major, so for k = 2 cell 11
is in B1, 13 in B2, 31 in B3 and 33 in B4.  A given cell contributes only
its forced candidate.
"""

from __future__ import annotations

import enum
import math
from collections.abc import Sequence
from dataclasses import dataclass

from .errors import BadDimensions, BadToken, IncompleteGrid, InconsistentGivens, MalformedSolution
from .latin import cell_label, is_latin, parse_cell_label
from .model import Instance, Solution
from .search import EngineKind, SearchLimits, SearchStats, solve

Puzzle = list[list[int | None]]
Grid = list[list[int]]


@dataclass(frozen=True)
class SudokuSpec:
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"order must be >= 1, got {self.k}")

    @property
    def n(self) -> int:
        return self.k * self.k

    def box(self, i: int, j: int) -> int:
        """1-based box number of 1-based cell (i, j)."""
        k = self.k
        return (i - 1) // k * k + (j - 1) // k + 1


class Limit(enum.Enum):
    FIRST = "first"
    CHECK_UNIQUE = "check-unique"
    ALL = "all"


def givens_conflict(spec: SudokuSpec, puzzle: Puzzle) -> str | None:
    seen: dict[tuple[str, int, int], tuple[int, int]] = {}
    for i, line in enumerate(puzzle, start=1):
        for j, v in enumerate(line, start=1):
            if v is None:
                continue
            for unit in (("row", i, v), ("column", j, v), ("box", spec.box(i, j), v)):
                if unit in seen:
                    a, b = seen[unit]
                    return f"{v} repeated in {unit[0]} {unit[1]} at ({a},{b}) and ({i},{j})"
                seen[unit] = (i, j)
    return None


def _check_puzzle(spec: SudokuSpec, puzzle: Puzzle) -> None:
    n = spec.n
    if len(puzzle) != n or any(len(line) != n for line in puzzle):
        raise BadDimensions(f"puzzle must be {n}x{n}")
    for line in puzzle:
        for v in line:
            if v is not None and not 1 <= v <= n:
                raise BadToken(f"symbol {v} outside 1..{n}")
    problem = givens_conflict(spec, puzzle)
    if problem:
        raise InconsistentGivens(problem)


def build_instance(spec: SudokuSpec, puzzle: Puzzle | None = None) -> Instance:
    n = spec.n
    if puzzle is not None:
        _check_puzzle(spec, puzzle)
    rng = range(1, n + 1)
    inst = Instance()
    inst.declare_primary(
        [cell_label(i, j, n) for i in rng for j in rng]
        + [f"R{i}N{v}" for i in rng for v in rng]
        + [f"C{j}N{v}" for j in rng for v in rng]
        + [f"B{b}N{v}" for b in rng for v in rng]
    )
    for i in rng:
        for j in rng:
            given = None if puzzle is None else puzzle[i - 1][j - 1]
            b = spec.box(i, j)
            for v in rng if given is None else (given,):
                inst.add_row([cell_label(i, j, n), f"R{i}N{v}", f"C{j}N{v}", f"B{b}N{v}"])
    return inst


def read_puzzle(text: str, spec: SudokuSpec | None = None) -> tuple[SudokuSpec, Puzzle]:
    """Parse a puzzle grid; '.' or '0' mark blanks.

    Accepts n lines of n whitespace-separated tokens, n lines of n
    characters, or (for n <= 9) all n*n characters on one line.  Box
    separator characters ``|``, ``-`` and ``+`` are ignored.  Without a
    spec, the order is inferred from the number of cells.
    """
    lines = []
    for raw in text.splitlines():
        line = raw.translate(str.maketrans("", "", "|+-")).strip()
        if line and not line.startswith("#"):
            lines.append(line)
    if not lines:
        raise BadDimensions("empty puzzle")
    tokens_per_line = [line.split() for line in lines]
    if len(lines) == 1 and len(tokens_per_line[0]) == 1:
        flat = list(tokens_per_line[0][0])
    elif all(len(t) == 1 for t in tokens_per_line) and len(lines) > 1:
        flat = [ch for line in lines for ch in line]
        width = len(lines[0])
        if any(len(line) != width for line in lines):
            raise BadDimensions("rows have different lengths")
    else:
        flat = [tok for toks in tokens_per_line for tok in toks]
        width = len(tokens_per_line[0])
        if any(len(t) != width for t in tokens_per_line):
            raise BadDimensions("rows have different numbers of cells")
    if spec is None:
        k = math.isqrt(math.isqrt(len(flat)))
        spec = SudokuSpec(max(k, 1))
    n = spec.n
    if len(flat) != n * n:
        raise BadDimensions(f"expected {n * n} cells for order {spec.k}, got {len(flat)}")
    puzzle: Puzzle = []
    for r in range(n):
        line = []
        for c in range(n):
            tok = flat[r * n + c]
            if tok in (".", "0"):
                line.append(None)
                continue
            if not tok.isdigit() or not 1 <= int(tok) <= n:
                raise BadToken(f"bad cell {tok!r} at column {c + 1}", r + 1)
            line.append(int(tok))
        puzzle.append(line)
    problem = givens_conflict(spec, puzzle)
    if problem:
        raise InconsistentGivens(problem)
    return spec, puzzle


def count_givens(puzzle: Puzzle) -> int:
    return sum(v is not None for line in puzzle for v in line)


def solution_to_grid(spec: SudokuSpec, solution: Solution) -> Grid:
    n = spec.n
    grid: list[list[int | None]] = [[None] * n for _ in range(n)]
    for row in solution.labels:
        try:
            i, j = parse_cell_label(row[0], n)
            v = int(row[1].split("N")[1])
        except (IndexError, ValueError):
            raise MalformedSolution(f"not a Sudoku candidate row: {row!r}") from None
        grid[i - 1][j - 1] = v
    if any(v is None for line in grid for v in line):
        raise MalformedSolution("solution leaves cells empty")
    return grid  # type: ignore[return-value]


def grid_is_valid_sudoku(spec: SudokuSpec, grid: Sequence[Sequence[int | None]]) -> bool:
    n, k = spec.n, spec.k
    if any(v is None for line in grid for v in line):
        raise IncompleteGrid("grid has blank cells")
    if len(grid) != n or not is_latin(grid):  # type: ignore[arg-type]
        return False
    symbols = set(range(1, n + 1))
    for bi in range(0, n, k):
        for bj in range(0, n, k):
            if {grid[i][j] for i in range(bi, bi + k) for j in range(bj, bj + k)} != symbols:
                return False
    return True


def solve_puzzle(
    spec: SudokuSpec,
    puzzle: Puzzle | None,
    limit: Limit | str = Limit.FIRST,
    engine: EngineKind | str = EngineKind.DLX,
    max_updates: int | None = None,
) -> tuple[list[Grid], SearchStats]:
    """Complete a puzzle.  CHECK_UNIQUE stops at the second completion."""
    limit = Limit(limit)
    inst = build_instance(spec, puzzle)
    cap = {Limit.FIRST: 1, Limit.CHECK_UNIQUE: 2, Limit.ALL: None}[limit]
    grids: list[Grid] = []
    stats = solve(
        inst,
        engine,
        SearchLimits(max_solutions=cap, max_updates=max_updates),
        emit=lambda sol: grids.append(solution_to_grid(spec, sol)),
    )
    return grids, stats


def format_grid(grid: Sequence[Sequence[int | None]], boxes: int = 0) -> str:
    """n lines of n tokens; with ``boxes`` = k, draw box separators."""
    n = len(grid)
    width = len(str(n))
    cells = [["." if v is None else str(v).rjust(width) for v in line] for line in grid]
    if not boxes:
        return "".join(" ".join(line) + "\n" for line in cells)
    k = boxes
    rule = "+".join(["-" * (k * (width + 1) + 1)] * k)
    out = [rule]
    for i, line in enumerate(cells):
        parts = [" " + " ".join(line[b : b + k]) + " " for b in range(0, n, k)]
        out.append("|".join(parts))
        if (i + 1) % k == 0:
            out.append(rule)
    return "\n".join(out) + "\n"
