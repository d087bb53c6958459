"""Command-line interface.

Solutions go to stdout; diagnostics and statistics go to stderr, so
``xcover gen ... | xcover count -`` pipelines stay clean.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import latin, pentomino, queens, report, sudoku
from .errors import CoverError
from .fileio import read_instance, write_instance, write_solution, write_stats
from .search import EngineKind, SearchLimits, solve

EXIT_FOUND, EXIT_NONE, EXIT_INPUT, EXIT_MULTIPLE = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read_bytes(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _read_text(path: str) -> str:
    try:
        return _read_bytes(path).decode("utf-8")
    except UnicodeDecodeError as exc:
        raise InputError(f"{path}: not UTF-8 ({exc.reason})") from None


def _limits(args, max_solutions=None) -> SearchLimits:
    return SearchLimits(
        max_solutions=max_solutions,
        max_updates=args.max_updates,
        time_budget=getattr(args, "time_budget", None),
    )


def _emit_stats(args, stats) -> None:
    if getattr(args, "stats", False):
        sys.stderr.write(write_stats(stats))


def _load_board(args) -> pentomino.Board:
    if args.board_file:
        return pentomino.read_board(_read_text(args.board_file))
    try:
        return pentomino.builtin_board(args.board)
    except ValueError as exc:
        raise InputError(str(exc)) from None


# -- commands ---------------------------------------------------------------


def cmd_solve(args) -> int:
    inst = read_instance(_read_bytes(args.file))
    cap = 1 if args.first else args.max
    out = sys.stdout

    def emit(sol):
        emit.n += 1
        if not args.quiet:
            out.write(write_solution(sol, emit.n))

    emit.n = 0
    stats = solve(inst, args.engine, _limits(args, cap), emit=emit, policy=args.policy)
    _emit_stats(args, stats)
    return EXIT_FOUND if stats.solutions_found else EXIT_NONE


def cmd_count(args) -> int:
    inst = read_instance(_read_bytes(args.file))
    stats = solve(inst, args.engine, _limits(args), policy=args.policy)
    print(stats.solutions_found)
    _emit_stats(args, stats)
    return EXIT_FOUND if stats.solutions_found else EXIT_NONE


def cmd_gen(args) -> int:
    if args.kind == "pentomino":
        inst, table = pentomino.build_instance(_load_board(args), args.one_sided)
        if args.placements:
            Path(args.placements).write_text(pentomino.format_placement_table(table))
    elif args.kind == "latin":
        inst = latin.build_instance(latin.LatinSpec(args.n, args.normalized))
    elif args.kind == "sudoku":
        spec = sudoku.SudokuSpec(args.order)
        puzzle = None
        if args.puzzle:
            spec, puzzle = sudoku.read_puzzle(_read_text(args.puzzle), spec)
        inst = sudoku.build_instance(spec, puzzle)
    else:
        inst = queens.build_instance(args.n)
    sys.stdout.buffer.write(write_instance(inst))
    sys.stdout.flush()
    return EXIT_FOUND


def cmd_pentomino(args) -> int:
    board = _load_board(args)
    inst, table = pentomino.build_instance(board, args.one_sided)
    tilings = []
    stats = solve(
        inst,
        args.engine,
        _limits(args),
        emit=lambda sol: tilings.append(pentomino.solution_placements(table, sol)),
    )
    print(f"rows {inst.n_rows}")
    print(f"columns {inst.n_columns}")
    print(f"solutions {stats.solutions_found}")
    shown = tilings
    if args.unique:
        shown = pentomino.dedupe_unique(board, tilings)
        print(f"unique {len(shown)}")
    if args.render:
        for k, tiling in enumerate(shown, start=1):
            print(f"SOLUTION {k}")
            sys.stdout.write(pentomino.render_solution(board, tiling))
    _emit_stats(args, stats)
    return EXIT_FOUND if stats.solutions_found else EXIT_NONE


def cmd_sudoku(args) -> int:
    spec = sudoku.SudokuSpec(args.order) if args.order else None
    spec, puzzle = sudoku.read_puzzle(_read_text(args.puzzle), spec)
    limit = sudoku.Limit.ALL if args.all else sudoku.Limit.CHECK_UNIQUE if args.check_unique else sudoku.Limit.FIRST
    grids, stats = sudoku.solve_puzzle(spec, puzzle, limit, args.engine, args.max_updates)
    for k, grid in enumerate(grids, start=1):
        if len(grids) > 1:
            print(f"SOLUTION {k}")
        sys.stdout.write(sudoku.format_grid(grid, spec.k if args.render else 0))
    n = len(grids)
    if limit is sudoku.Limit.CHECK_UNIQUE:
        print(f"solutions {'2+' if n >= 2 else n}")
    elif limit is sudoku.Limit.ALL:
        print(f"solutions {n}")
    _emit_stats(args, stats)
    if n == 0:
        return EXIT_NONE
    if n > 1:
        return EXIT_MULTIPLE
    return EXIT_FOUND


def cmd_queens(args) -> int:
    inst = queens.build_instance(args.n)
    out = []
    stats = solve(inst, args.engine, _limits(args, args.max), emit=out.append if args.render else None)
    print(f"solutions {stats.solutions_found}")
    for k, sol in enumerate(out, start=1):
        print(f"SOLUTION {k}")
        sys.stdout.write(queens.render_queens(args.n, sol))
    _emit_stats(args, stats)
    return EXIT_FOUND if stats.solutions_found else EXIT_NONE


def cmd_bench(args) -> int:
    engines = [EngineKind(e) for e in args.engines.split(",")]
    errors: list[str] = []
    results = report.run_bench(Path(args.corpus), engines, args.repeats, _limits(args), errors)
    for msg in errors:
        print(msg, file=sys.stderr)
    sys.stdout.write(report.format_table(results))
    if args.figures and results:
        paths = report.plot_level_profiles(results, Path(args.figures))
        paths.append(report.plot_rates(results, Path(args.figures)))
        for p in paths:
            print(f"wrote {p}", file=sys.stderr)
    return EXIT_FOUND


# -- parser -----------------------------------------------------------------


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    search = argparse.ArgumentParser(add_help=False)
    search.add_argument("--engine", choices=[e.value for e in EngineKind], default="dlx")
    search.add_argument("--max-updates", type=_positive, default=None, help="stop after this many updates")
    search.add_argument("--stats", action="store_true", help="print search statistics to stderr")

    board = argparse.ArgumentParser(add_help=False)
    where = board.add_mutually_exclusive_group()
    where.add_argument("--board", default="6x10", help=f"built-in board: {', '.join(pentomino.BUILTIN_BOARDS)}")
    where.add_argument("--board-file", help="board mask file of '#' (cell) and '.' (hole)")
    board.add_argument("--one-sided", action="store_true", help="forbid reflecting pieces")

    p = argparse.ArgumentParser(prog="xcover", description="Exact cover with Algorithm X and Dancing Links.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", parents=[search], help="print the solutions of an instance file")
    s.add_argument("file", help="instance file, or - for stdin")
    which = s.add_mutually_exclusive_group()
    which.add_argument("--all", action="store_true", help="all solutions (default)")
    which.add_argument("--first", action="store_true", help="stop after the first solution")
    which.add_argument("--max", type=_positive, metavar="N", help="stop after N solutions")
    s.add_argument("--quiet", action="store_true", help="do not print solutions")
    s.add_argument("--policy", choices=["mrv", "first"], default="mrv", help="column choice rule")
    s.add_argument("--time-budget", type=float, default=None, metavar="SECONDS")
    s.set_defaults(func=cmd_solve)

    c = sub.add_parser("count", parents=[search], help="count the solutions of an instance file")
    c.add_argument("file", help="instance file, or - for stdin")
    c.add_argument("--policy", choices=["mrv", "first"], default="mrv")
    c.set_defaults(func=cmd_count)

    g = sub.add_parser("gen", help="write a generated instance to stdout")
    gsub = g.add_subparsers(dest="kind", required=True)
    gp = gsub.add_parser("pentomino", parents=[board])
    gp.add_argument("--placements", metavar="FILE", help="also write the row -> placement table")
    gl = gsub.add_parser("latin")
    gl.add_argument("--n", type=_positive, required=True)
    gl.add_argument("--normalized", action="store_true")
    gs = gsub.add_parser("sudoku")
    gs.add_argument("--order", type=_positive, default=3)
    gs.add_argument("--puzzle", help="puzzle file with givens")
    gq = gsub.add_parser("queens")
    gq.add_argument("--n", type=_positive, required=True)
    g.set_defaults(func=cmd_gen)

    pt = sub.add_parser("pentomino", parents=[search, board], help="enumerate pentomino tilings")
    pt.add_argument("--unique", action="store_true", help="also count solutions up to board symmetry")
    pt.add_argument("--render", action="store_true", help="print tilings as letter grids")
    pt.set_defaults(func=cmd_pentomino)

    sd = sub.add_parser("sudoku", parents=[search], help="complete a Sudoku puzzle")
    sd.add_argument("puzzle", help="puzzle file, or - for stdin")
    sd.add_argument("--order", type=_positive, default=None, help="box size k (inferred if omitted)")
    mode = sd.add_mutually_exclusive_group()
    mode.add_argument("--check-unique", action="store_true", help="classify as 0, 1 or 2+ solutions")
    mode.add_argument("--all", action="store_true", help="print every completion")
    sd.add_argument("--render", action="store_true", help="draw box separators")
    sd.set_defaults(func=cmd_sudoku)

    q = sub.add_parser("queens", parents=[search], help="solve N queens")
    q.add_argument("--n", type=_positive, required=True)
    q.add_argument("--render", action="store_true")
    q.add_argument("--max", type=_positive, default=None, metavar="N")
    q.set_defaults(func=cmd_queens)

    b = sub.add_parser("bench", help="compare engines over a directory of instance files")
    b.add_argument("corpus", help="directory of instance files")
    b.add_argument("--engines", default="naive,dlx")
    b.add_argument("--repeats", type=_positive, default=1)
    b.add_argument("--max-updates", type=_positive, default=None)
    b.add_argument("--figures", metavar="DIR", help="write per-level update charts here")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CoverError, InputError, ValueError) as exc:
        print(f"xcover: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BrokenPipeError:
        return EXIT_FOUND


if __name__ == "__main__":
    sys.exit(main())
