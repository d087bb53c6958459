"""Pentomino tilings as exact cover.

Columns: the 12 piece letters, then one column per board cell numbered
row-major from 1.  Rows: every placement of every orientation of every
piece that lands entirely on board cells.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from .errors import BadCharacter, EmptyBoard, IncompleteSolution, TransformEscape
from .model import Instance, Solution

Cell = tuple[int, int]
Shape = tuple[Cell, ...]

PIECE_ORDER = "FILPNTUVWXYZ"

_PIECE_ART = {
    "F": (".##", "##.", ".#."),
    "I": ("#####",),
    "L": ("####", "#..."),
    "P": ("##", "##", "#."),
    "N": ("##..", ".###"),
    "T": ("###", ".#.", ".#."),
    "U": ("#.#", "###"),
    "V": ("#..", "#..", "###"),
    "W": ("#..", "##.", ".##"),
    "X": (".#.", "###", ".#."),
    "Y": ("..#.", "####"),
    "Z": ("##.", ".#.", ".##"),
}


def normalize(cells: Iterable[Cell]) -> Shape:
    cells = list(cells)
    r0 = min(r for r, _ in cells)
    c0 = min(c for _, c in cells)
    return tuple(sorted((r - r0, c - c0) for r, c in cells))


PIECES: dict[str, Shape] = {
    name: normalize((r, c) for r, line in enumerate(art) for c, ch in enumerate(line) if ch == "#")
    for name, art in _PIECE_ART.items()
}


# The 8 isometries of the square lattice, as maps on (row, col).
# Index 0 is the identity; 0-3 are rotations, 4-7 add a reflection.
def _iso(k: int, cell: Cell) -> Cell:
    r, c = cell
    if k >= 4:
        c = -c
    for _ in range(k % 4):
        r, c = c, -r
    return r, c


ISOMETRIES = range(8)


def transform(k: int, cells: Iterable[Cell]) -> list[Cell]:
    return [_iso(k, cell) for cell in cells]


def piece_orientations(piece: str, one_sided: bool = False) -> list[Shape]:
    shape = PIECES[piece]
    isos = range(4) if one_sided else ISOMETRIES
    return sorted({normalize(transform(k, shape)) for k in isos})


@dataclass(frozen=True)
class Board:
    """A set of cells; cell numbers run row-major from 1, skipping holes."""

    cells: frozenset[Cell]

    def __post_init__(self):
        if not self.cells:
            raise EmptyBoard("board has no cells")

    @property
    def ordered(self) -> list[Cell]:
        return sorted(self.cells)

    @property
    def numbers(self) -> dict[Cell, int]:
        return {cell: k for k, cell in enumerate(self.ordered, start=1)}

    @property
    def height(self) -> int:
        return max(r for r, _ in self.cells) + 1

    @property
    def width(self) -> int:
        return max(c for _, c in self.cells) + 1

    def mask(self) -> str:
        return "".join(
            "".join("#" if (r, c) in self.cells else "." for c in range(self.width)) + "\n"
            for r in range(self.height)
        )


def rectangle(height: int, width: int) -> Board:
    return Board(frozenset((r, c) for r in range(height) for c in range(width)))


def _chess() -> Board:
    centre = {(3, 3), (3, 4), (4, 3), (4, 4)}
    return Board(frozenset((r, c) for r in range(8) for c in range(8) if (r, c) not in centre))


def _cross() -> Board:
    # a 3-wide, 14-tall bar crossed by a 9-wide, 3-tall bar on rows 4-6 from the top
    upright = {(r, c) for r in range(14) for c in range(3, 6)}
    crossbar = {(r, c) for r in range(3, 6) for c in range(9)}
    return Board(frozenset(upright | crossbar))


BUILTIN_BOARDS = {
    "r3x20": lambda: rectangle(3, 20),
    "r4x15": lambda: rectangle(4, 15),
    "r5x12": lambda: rectangle(5, 12),
    "r6x10": lambda: rectangle(6, 10),
    "chess": _chess,
    "cross": _cross,
}


def builtin_board(name: str) -> Board:
    key = name.lower()
    if key not in BUILTIN_BOARDS and f"r{key}" in BUILTIN_BOARDS:
        key = f"r{key}"
    try:
        return BUILTIN_BOARDS[key]()
    except KeyError:
        raise ValueError(f"unknown board {name!r}; choose from {', '.join(BUILTIN_BOARDS)}") from None


def read_board(text: str) -> Board:
    cells = set()
    for r, line in enumerate(text.splitlines()):
        for c, ch in enumerate(line):
            if ch == "#":
                cells.add((r, c))
            elif ch != ".":
                raise BadCharacter(r + 1, c + 1, ch)
    if not cells:
        raise EmptyBoard("board mask has no '#' cells")
    return Board(frozenset(cells))


@dataclass(frozen=True)
class Placement:
    piece: str
    cells: Shape  # sorted absolute coordinates


def placements(board: Board, one_sided: bool = False, pieces: str = PIECE_ORDER) -> list[Placement]:
    """All placements in (piece, orientation, anchor row-major) order."""
    out = []
    h, w = board.height, board.width
    for piece in pieces:
        for shape in piece_orientations(piece, one_sided):
            sh = max(r for r, _ in shape) + 1
            sw = max(c for _, c in shape) + 1
            for dr in range(h - sh + 1):
                for dc in range(w - sw + 1):
                    cells = tuple((r + dr, c + dc) for r, c in shape)
                    if all(cell in board.cells for cell in cells):
                        out.append(Placement(piece, cells))
    return out


def build_instance(
    board: Board, one_sided: bool = False, pieces: str = PIECE_ORDER
) -> tuple[Instance, dict[int, Placement]]:
    numbers = board.numbers
    inst = Instance()
    inst.declare_primary(list(pieces) + [str(k) for k in range(1, len(numbers) + 1)])
    table = {}
    for p in placements(board, one_sided, pieces):
        row_id = inst.add_row([p.piece] + [str(numbers[cell]) for cell in p.cells])
        table[row_id] = p
    return inst, table


def format_placement_table(table: dict[int, Placement]) -> str:
    return "".join(
        f"{row_id} {p.piece} " + " ".join(f"{r},{c}" for r, c in p.cells) + "\n"
        for row_id, p in sorted(table.items())
    )


def solution_placements(table: dict[int, Placement], solution: Solution | Sequence[int]) -> frozenset[Placement]:
    rows = solution.rows if isinstance(solution, Solution) else solution
    return frozenset(table[r] for r in rows)


def render_solution(board: Board, tiling: Iterable[Placement]) -> str:
    letter: dict[Cell, str] = {}
    for p in tiling:
        for cell in p.cells:
            letter[cell] = p.piece
    missing = board.cells - letter.keys()
    if missing:
        raise IncompleteSolution(f"{len(missing)} board cells are not covered")
    return "".join(
        "".join(letter.get((r, c), ".") for c in range(board.width)) + "\n"
        for r in range(board.height)
    )


def _transform_board_cells(k: int, cells: Iterable[Cell]) -> tuple[list[Cell], Cell]:
    """Apply isometry k and translate so the image's bounding box starts at (0, 0)."""
    img = transform(k, cells)
    r0 = min(r for r, _ in img)
    c0 = min(c for _, c in img)
    return [(r - r0, c - c0) for r, c in img], (r0, c0)


def symmetry_group(board: Board) -> list[int]:
    """Isometries (indices into ISOMETRIES) mapping the board onto itself."""
    base = (min(r for r, _ in board.cells), min(c for _, c in board.cells))
    group = []
    for k in ISOMETRIES:
        img, _ = _transform_board_cells(k, board.cells)
        shifted = {(r + base[0], c + base[1]) for r, c in img}
        if shifted == board.cells:
            group.append(k)
    return group


def _apply(board: Board, k: int, tiling: Iterable[Placement]) -> tuple[tuple[str, Shape], ...]:
    cells = board.cells
    img_cells, offset = _transform_board_cells(k, cells)
    base = (min(r for r, _ in cells), min(c for _, c in cells))
    out = []
    for p in tiling:
        moved = []
        for r, c in transform(k, p.cells):
            cell = (r - offset[0] + base[0], c - offset[1] + base[1])
            if cell not in cells:
                raise TransformEscape(f"isometry {k} moves {p.piece} off the board")
            moved.append(cell)
        out.append((p.piece, tuple(sorted(moved))))
    return tuple(sorted(out))


def dedupe_unique(board: Board, tilings: Iterable[Iterable[Placement]]) -> list[frozenset[Placement]]:
    """One canonical representative per symmetry orbit, in first-seen order.

    The representative is the lexicographically least image of the tiling
    (as sorted (piece, cells) pairs) under the board's symmetry group.
    """
    group = symmetry_group(board)
    seen: set[tuple] = set()
    out = []
    for tiling in tilings:
        tiling = list(tiling)
        key = min(_apply(board, k, tiling) for k in group)
        if key not in seen:
            seen.add(key)
            out.append(frozenset(Placement(piece, cells) for piece, cells in key))
    return out


def orbit_sizes(board: Board, tilings: Iterable[Iterable[Placement]]) -> dict[tuple, int]:
    group = symmetry_group(board)
    sizes: dict[tuple, int] = {}
    for tiling in tilings:
        tiling = list(tiling)
        key = min(_apply(board, k, tiling) for k in group)
        sizes[key] = sizes.get(key, 0) + 1
    return sizes
