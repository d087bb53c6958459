"""Exact-cover instances.

An instance is a sparse 0/1 incidence matrix: one row per candidate subset,
one column per constraint.  Primary columns must be covered exactly once,
secondary columns at most once.  Rows are anonymous and numbered from 1 in
the order they were added; columns are numbered in order of first
appearance (explicit declarations count as appearances).
"""

from __future__ import annotations

import enum
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from .errors import (
    DuplicateColumn,
    DuplicateLabelInRow,
    EmptyRow,
    InvalidLabel,
    LateDeclaration,
    UnknownRowId,
)


class ColumnKind(enum.Enum):
    PRIMARY = "primary"
    SECONDARY = "secondary"


@dataclass(frozen=True)
class UncoverablePrimary:
    label: str

    def __str__(self) -> str:
        return f"primary column {self.label!r} appears in no row"


@dataclass(frozen=True)
class DuplicateRow:
    first: int
    second: int

    def __str__(self) -> str:
        return f"rows {self.first} and {self.second} are identical"


InstanceWarning = UncoverablePrimary | DuplicateRow


@dataclass(frozen=True)
class Solution:
    """Selected rows in selection order, with each row's column labels."""

    rows: tuple[int, ...]
    labels: tuple[tuple[str, ...], ...]


def check_label(label: object) -> str:
    if not isinstance(label, str) or not label:
        raise InvalidLabel(f"column label must be a non-empty string, got {label!r}")
    if any(ch.isspace() for ch in label):
        raise InvalidLabel(f"column label {label!r} contains whitespace")
    # a leading '#' or '%' would turn the row into a comment or directive on disk
    if label[0] in "#%":
        raise InvalidLabel(f"column label {label!r} starts with {label[0]!r}")
    return label


class Instance:
    """Builder and container for one exact-cover problem.

    Engines never mutate an instance; they copy what they need into private
    search state, so a finished instance can be shared freely.
    """

    def __init__(self) -> None:
        self._labels: list[str] = []
        self._kinds: list[ColumnKind] = []
        self._index: dict[str, int] = {}
        self._rows: list[tuple[int, ...]] = []
        self._used: list[bool] = []
        # columns [0, _declared) came from declarations, in declaration order
        self._declared = 0
        self.node_count = 0

    # -- construction ---------------------------------------------------------

    def _declare(self, labels: Iterable[str], kind: ColumnKind) -> None:
        labels = [check_label(label) for label in labels]
        for label in labels:
            if label in self._index:
                if self._used[self._index[label]]:
                    raise LateDeclaration(f"column {label!r} already used by a row")
                raise DuplicateColumn(f"column {label!r} already declared")
        if len(set(labels)) != len(labels):
            raise DuplicateColumn("duplicate label in declaration")
        if self._declared != len(self._labels):
            # a row-introduced column already exists; declarations must precede rows
            raise LateDeclaration("columns must be declared before the first row")
        for label in labels:
            self._index[label] = len(self._labels)
            self._labels.append(label)
            self._kinds.append(kind)
            self._used.append(False)
        self._declared = len(self._labels)

    def declare_secondary(self, labels: Iterable[str]) -> None:
        """Register at-most-once columns.  Must happen before any row uses them."""
        self._declare(labels, ColumnKind.SECONDARY)

    def declare_primary(self, labels: Iterable[str]) -> None:
        """Register exactly-once columns ahead of the rows.

        Needed for columns that might end up in no row at all (which makes the
        instance unsatisfiable) and to fix the column order independently of
        the row order.
        """
        self._declare(labels, ColumnKind.PRIMARY)

    def add_row(self, labels: Sequence[str]) -> int:
        """Append a row; unseen labels become primary columns.  Returns the 1-based row id."""
        labels = [check_label(label) for label in labels]
        if not labels:
            raise EmptyRow("a row must reference at least one column")
        if len(set(labels)) != len(labels):
            dup = next(lab for lab in labels if labels.count(lab) > 1)
            raise DuplicateLabelInRow(f"label {dup!r} repeated in row")
        cols = []
        for label in labels:
            idx = self._index.get(label)
            if idx is None:
                idx = len(self._labels)
                self._index[label] = idx
                self._labels.append(label)
                self._kinds.append(ColumnKind.PRIMARY)
                self._used.append(False)
            self._used[idx] = True
            cols.append(idx)
        self._rows.append(tuple(cols))
        self.node_count += len(cols)
        return len(self._rows)

    # -- read access ----------------------------------------------------------

    @property
    def n_rows(self) -> int:
        return len(self._rows)

    @property
    def n_columns(self) -> int:
        return len(self._labels)

    @property
    def columns(self) -> list[tuple[str, ColumnKind]]:
        return list(zip(self._labels, self._kinds))

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(self._labels)

    @property
    def kinds(self) -> tuple[ColumnKind, ...]:
        return tuple(self._kinds)

    @property
    def declared_count(self) -> int:
        """Number of leading columns that were declared rather than row-introduced."""
        return self._declared

    @property
    def rows(self) -> list[tuple[int, ...]]:
        """Rows as tuples of column ordinals (0-based), in declaration order."""
        return list(self._rows)

    def row(self, row_id: int) -> tuple[int, ...]:
        if not 1 <= row_id <= len(self._rows):
            raise UnknownRowId(f"row {row_id} not in 1..{len(self._rows)}")
        return self._rows[row_id - 1]

    def row_labels(self, row_id: int) -> tuple[str, ...]:
        return tuple(self._labels[c] for c in self.row(row_id))

    def column_index(self, label: str) -> int:
        return self._index[label]

    def is_primary(self, col: int) -> bool:
        return self._kinds[col] is ColumnKind.PRIMARY

    @property
    def primary_columns(self) -> list[int]:
        return [c for c, k in enumerate(self._kinds) if k is ColumnKind.PRIMARY]

    def solution(self, rows: Sequence[int]) -> Solution:
        return Solution(tuple(rows), tuple(self.row_labels(r) for r in rows))

    def validate(self) -> list[InstanceWarning]:
        warnings: list[InstanceWarning] = []
        for col, (label, kind) in enumerate(zip(self._labels, self._kinds)):
            if kind is ColumnKind.PRIMARY and not self._used[col]:
                warnings.append(UncoverablePrimary(label))
        seen: dict[tuple[int, ...], int] = {}
        for i, row in enumerate(self._rows, start=1):
            first = seen.setdefault(tuple(sorted(row)), i)
            if first != i:
                warnings.append(DuplicateRow(first, i))
        return warnings

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Instance):
            return NotImplemented
        return (
            self._labels == other._labels
            and self._kinds == other._kinds
            and self._rows == other._rows
            and self._declared == other._declared
        )

    def __repr__(self) -> str:
        n_sec = sum(k is ColumnKind.SECONDARY for k in self._kinds)
        return (
            f"Instance({self.n_rows} rows x {self.n_columns} columns, "
            f"{n_sec} secondary, {self.node_count} nodes)"
        )


def new_instance() -> Instance:
    return Instance()


def check_solution(instance: Instance, rows: Iterable[int]) -> bool:
    """True iff the rows are pairwise disjoint and cover every primary column."""
    covered: set[int] = set()
    for r in rows:
        for c in instance.row(r):
            if c in covered:
                return False
            covered.add(c)
    return all(c in covered for c in instance.primary_columns)
