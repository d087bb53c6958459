"""Latin squares as exact cover.

Three families of n*n constraints: every cell holds one symbol, every row
holds each symbol once, every column holds each symbol once.  Candidate
(i, j, v) -- symbol v in cell (i, j) -- becomes the row ``ij RiNv CjNv``.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

from .errors import MalformedSolution
from .model import Instance, Solution

Grid = list[list[int]]


@dataclass(frozen=True)
class LatinSpec:
    n: int
    normalized: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"order must be >= 1, got {self.n}")


def cell_label(i: int, j: int, n: int) -> str:
    return f"{i}{j}" if n <= 9 else f"r{i}c{j}"


def parse_cell_label(label: str, n: int) -> tuple[int, int]:
    if n <= 9:
        return int(label[0]), int(label[1])
    i, j = label[1:].split("c")
    return int(i), int(j)


def fixed_value(i: int, j: int, spec: LatinSpec) -> int | None:
    """Symbol forced by normalization (first row and column in natural order)."""
    if not spec.normalized:
        return None
    if i == 1:
        return j
    if j == 1:
        return i
    return None


def build_instance(spec: LatinSpec) -> Instance:
    n = spec.n
    inst = Instance()
    rng = range(1, n + 1)
    inst.declare_primary(
        [cell_label(i, j, n) for i in rng for j in rng]
        + [f"R{i}N{v}" for i in rng for v in rng]
        + [f"C{j}N{v}" for j in rng for v in rng]
    )
    for i in rng:
        for j in rng:
            forced = fixed_value(i, j, spec)
            for v in rng if forced is None else (forced,):
                inst.add_row([cell_label(i, j, n), f"R{i}N{v}", f"C{j}N{v}"])
    return inst


def expected_shape(spec: LatinSpec) -> tuple[int, int]:
    n = spec.n
    rows = (2 * n - 1) + (n - 1) ** 2 * n if spec.normalized else n**3
    return rows, 3 * n * n


def solution_to_grid(spec: LatinSpec, solution: Solution | Sequence[Sequence[str]]) -> Grid:
    n = spec.n
    labels = solution.labels if isinstance(solution, Solution) else solution
    grid: list[list[int | None]] = [[None] * n for _ in range(n)]
    for row in labels:
        try:
            i, j = parse_cell_label(row[0], n)
            v = int(row[1].split("N")[1])
        except (IndexError, ValueError):
            raise MalformedSolution(f"not a Latin candidate row: {row!r}") from None
        if not (1 <= i <= n and 1 <= j <= n and 1 <= v <= n) or grid[i - 1][j - 1] is not None:
            raise MalformedSolution(f"bad or repeated cell in row {row!r}")
        grid[i - 1][j - 1] = v
    if any(v is None for line in grid for v in line):
        raise MalformedSolution("solution leaves cells empty")
    if not is_latin(grid):
        raise MalformedSolution("grid is not a Latin square")
    return grid  # type: ignore[return-value]


def is_latin(grid: Sequence[Sequence[int]]) -> bool:
    n = len(grid)
    symbols = set(range(1, n + 1))
    if any(len(line) != n or set(line) != symbols for line in grid):
        return False
    return all({grid[i][j] for i in range(n)} == symbols for j in range(n))


def total_from_normalized(n: int, normalized_count: int) -> int:
    """Number of all Latin squares of order n given the normalized count.

    Python integers are unbounded, so this never wraps.
    """
    if n < 1:
        raise ValueError("order must be >= 1")
    return math.factorial(n) * math.factorial(n - 1) * normalized_count


def format_grid(grid: Sequence[Sequence[int]]) -> str:
    return "".join(" ".join(map(str, line)) + "\n" for line in grid)
