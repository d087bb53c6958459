"""N queens as a generalized cover: ranks and files exactly once, diagonals at most once."""

from __future__ import annotations

from .errors import MalformedSolution
from .model import Instance, Solution


def build_instance(n: int) -> Instance:
    if n < 1:
        raise ValueError(f"board size must be >= 1, got {n}")
    inst = Instance()
    diagonals = range(1, 2 * n)
    inst.declare_primary([f"R{i}" for i in range(1, n + 1)] + [f"F{j}" for j in range(1, n + 1)])
    inst.declare_secondary([f"A{d}" for d in diagonals] + [f"B{d}" for d in diagonals])
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            inst.add_row([f"R{i}", f"F{j}", f"A{i + j - 1}", f"B{i - j + n}"])
    return inst


def queen_squares(n: int, solution: Solution) -> list[tuple[int, int]]:
    squares = []
    for labels in solution.labels:
        try:
            i, j = int(labels[0][1:]), int(labels[1][1:])
        except (IndexError, ValueError):
            raise MalformedSolution(f"not a queens row: {labels!r}") from None
        squares.append((i, j))
    if len(squares) != n or len({i for i, _ in squares}) != n or len({j for _, j in squares}) != n:
        raise MalformedSolution("need exactly one queen per rank and file")
    return sorted(squares)


def render_queens(n: int, solution: Solution) -> str:
    cols = dict(queen_squares(n, solution))
    return "".join(
        "".join("Q" if cols[i] == j else "." for j in range(1, n + 1)) + "\n"
        for i in range(1, n + 1)
    )
