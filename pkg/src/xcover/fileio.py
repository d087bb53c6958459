"""Text formats: instance files, solution reports and search statistics.

Instance file grammar, one line at a time::

    # comment                       ignored, as are blank lines
    %secondary L1 L2 ...            at-most-once columns (before any row)
    %primary L1 L2 ...              exactly-once columns declared up front
    L1 L2 L3                        one row: labels of the columns it covers

Rows are numbered from 1 in file order.  Columns are numbered by first
appearance, directives included.
"""

from __future__ import annotations

import warnings

from .errors import BadDirective, CoverError, EmptyInstanceWarning, LateDirective, ParseError
from .model import ColumnKind, Instance, Solution
from .search import SearchStats

DIRECTIVES = {"%secondary": ColumnKind.SECONDARY, "%primary": ColumnKind.PRIMARY}


def read_instance(source: bytes | str) -> Instance:
    """Parse an instance file.  Raises ParseError (with a line number) on bad input."""
    if isinstance(source, bytes):
        try:
            source = source.decode("utf-8")
        except UnicodeDecodeError as exc:
            line = source[: exc.start].count(b"\n") + 1
            raise ParseError(f"invalid UTF-8 ({exc.reason})", line) from None
    inst = Instance()
    seen_row = False
    for lineno, line in enumerate(source.splitlines(), start=1):
        tokens = line.split()
        if not tokens or tokens[0].startswith("#"):
            continue
        try:
            if tokens[0].startswith("%"):
                kind = DIRECTIVES.get(tokens[0])
                if kind is None:
                    raise BadDirective(f"unknown directive {tokens[0]!r}", lineno)
                if seen_row:
                    raise LateDirective(f"{tokens[0]} after the first row", lineno)
                if kind is ColumnKind.SECONDARY:
                    inst.declare_secondary(tokens[1:])
                else:
                    inst.declare_primary(tokens[1:])
            else:
                inst.add_row(tokens)
                seen_row = True
        except ParseError:
            raise
        except CoverError as exc:
            raise ParseError(f"{type(exc).__name__}: {exc}", lineno) from exc
    if inst.n_rows == 0:
        warnings.warn("instance has no rows", EmptyInstanceWarning, stacklevel=2)
    return inst


def write_instance(instance: Instance) -> bytes:
    lines = []
    labels, kinds = instance.labels, instance.kinds
    # replay declarations as runs of same-kind directives, preserving order
    c = 0
    while c < instance.declared_count:
        kind = kinds[c]
        run = []
        while c < instance.declared_count and kinds[c] is kind:
            run.append(labels[c])
            c += 1
        name = "%secondary" if kind is ColumnKind.SECONDARY else "%primary"
        lines.append(" ".join([name, *run]))
    for cols in instance.rows:
        lines.append(" ".join(labels[c] for c in cols))
    return "".join(line + "\n" for line in lines).encode("utf-8")


def write_solution(solution: Solution, ordinal: int) -> str:
    if ordinal < 1:
        raise ValueError("solution ordinal starts at 1")
    lines = [f"SOLUTION {ordinal}"]
    lines.extend(" ".join(labels) for labels in solution.labels)
    return "\n".join(lines) + "\n"


def write_stats(stats: SearchStats) -> str:
    lines = [
        f"solutions {stats.solutions_found}",
        f"total_updates {stats.total_updates}",
        f"max_depth {stats.max_depth}",
        f"wall_time {stats.wall_time:.6f}",
        f"updates_per_second {stats.updates_per_second:.0f}",
        f"halted_by {stats.halted_by.value}",
    ]
    lines.extend(f"level {k} {v}" for k, v in sorted(stats.updates_per_level.items()))
    return "\n".join(lines) + "\n"


def read_stats(text: str) -> dict[str, object]:
    """Inverse of write_stats, for tooling that consumes saved stats blocks."""
    out: dict[str, object] = {"levels": {}}
    for line in text.splitlines():
        parts = line.split()
        if not parts:
            continue
        if parts[0] == "level":
            out["levels"][int(parts[1])] = int(parts[2])
        else:
            out[parts[0]] = parts[1]
    return out

