"""Dancing Links arena and the compiled search loop.

All nodes live in flat int32 arrays addressed by index:

* index 0 is the root of the header ring,
* indices 1..ncols are column headers (column ordinal ``c`` -> header ``c + 1``),
* every later index is a matrix node.

``left``/``right`` link headers in the ring and nodes within a row;
``up``/``down`` link nodes within a column.  ``col`` gives a node's header,
``row`` its 1-based row id (0 for headers), and ``size`` the number of live
nodes under each header.  Only primary headers are threaded into the ring;
a secondary header is linked to itself, so it is never chosen, but covering
it still unlinks every row that uses it.

The search loop keeps its entire state (level stack, program counter,
counters) in arrays, so it can stop to hand a solution to Python and later
resume where it left off.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .model import Instance

# search loop return codes
EXHAUSTED = 0
SOLUTION = 1
UPDATE_LIMIT = 2
PAUSED = 3
SOLUTION_LIMIT = 4

# slots of the control vector
LEVEL, PC, TOTAL, SOLUTIONS, MAX_DEPTH, MAX_UPDATES, POLICY, STOP_EACH, MAX_SOLUTIONS = range(9)
CTRL_SIZE = 9

# program counter values (entry points of the loop)
ENTER, TRY, RETRY, BACKTRACK, LEAVE = 2, 5, 6, 7, 8


@njit(cache=True)
def cover(c, left, right, up, down, col, size):
    """Remove header ``c`` and every row through it from the other columns.

    Returns the number of node unlinks, which is what counts as an update.
    """
    left[right[c]] = left[c]
    right[left[c]] = right[c]
    updates = 0
    i = down[c]
    while i != c:
        j = right[i]
        while j != i:
            up[down[j]] = up[j]
            down[up[j]] = down[j]
            size[col[j]] -= 1
            updates += 1
            j = right[j]
        i = down[i]
    return updates


@njit(cache=True)
def uncover(c, left, right, up, down, col, size):
    i = up[c]
    while i != c:
        j = left[i]
        while j != i:
            size[col[j]] += 1
            up[down[j]] = j
            down[up[j]] = j
            j = left[j]
        i = up[i]
    left[right[c]] = c
    right[left[c]] = c


@njit(cache=True)
def choose_column(right, size, policy):
    """Uncovered primary header with the fewest live rows; the ring is in
    ordinal order, so the first minimum found is the smallest ordinal.
    Returns 0 when the ring is empty."""
    c = right[0]
    if policy == 1 or c == 0:
        return c
    best = c
    best_size = size[c]
    j = right[c]
    while j != 0 and best_size > 0:
        if size[j] < best_size:
            best = j
            best_size = size[j]
        j = right[j]
    return best


@njit(cache=True)
def search(left, right, up, down, col, size, chosen, current, level_updates, ctrl, max_steps):
    """Run Algorithm X until a solution must be reported, a limit is hit,
    the step budget runs out, or the tree is exhausted.

    ``chosen[l]`` is the column header covered at level ``l`` and
    ``current[l]`` the node of the row being tried there.
    """
    lvl = ctrl[LEVEL]
    pc = ctrl[PC]
    total = ctrl[TOTAL]
    max_updates = ctrl[MAX_UPDATES]
    steps = 0
    status = PAUSED
    while True:
        steps += 1
        if steps > max_steps:
            status = PAUSED
            break
        if pc == ENTER:
            if right[0] == 0:
                ctrl[SOLUTIONS] += 1
                pc = LEAVE
                if ctrl[STOP_EACH] == 1:
                    status = SOLUTION
                    break
                if ctrl[MAX_SOLUTIONS] >= 0 and ctrl[SOLUTIONS] >= ctrl[MAX_SOLUTIONS]:
                    status = SOLUTION_LIMIT
                    break
                continue
            c = choose_column(right, size, ctrl[POLICY])
            n = cover(c, left, right, up, down, col, size)
            level_updates[lvl] += n
            total += n
            chosen[lvl] = c
            current[lvl] = down[c]
            pc = TRY
            if max_updates >= 0 and total >= max_updates:
                status = UPDATE_LIMIT
                break
        elif pc == TRY:
            x = current[lvl]
            if x == chosen[lvl]:
                pc = BACKTRACK
                continue
            n = 0
            p = right[x]
            while p != x:
                n += cover(col[p], left, right, up, down, col, size)
                p = right[p]
            level_updates[lvl] += n
            total += n
            lvl += 1
            if lvl > ctrl[MAX_DEPTH]:
                ctrl[MAX_DEPTH] = lvl
            pc = ENTER
            if max_updates >= 0 and total >= max_updates:
                status = UPDATE_LIMIT
                break
        elif pc == RETRY:
            x = current[lvl]
            p = left[x]
            while p != x:
                uncover(col[p], left, right, up, down, col, size)
                p = left[p]
            current[lvl] = down[x]
            pc = TRY
        elif pc == BACKTRACK:
            uncover(chosen[lvl], left, right, up, down, col, size)
            pc = LEAVE
        else:  # LEAVE
            if lvl == 0:
                status = EXHAUSTED
                break
            lvl -= 1
            pc = RETRY
    ctrl[LEVEL] = lvl
    ctrl[PC] = pc
    ctrl[TOTAL] = total
    return status


@njit(cache=True)
def unwind(left, right, up, down, col, size, chosen, current, ctrl):
    """Undo every cover still in effect after a search stopped early."""
    lvl = ctrl[LEVEL]
    pc = ctrl[PC]
    if pc == TRY or pc == BACKTRACK:
        # column covered at this level, no row applied yet
        uncover(chosen[lvl], left, right, up, down, col, size)
        start = lvl - 1
    elif pc == RETRY:
        start = lvl
    else:
        start = lvl - 1
    m = start
    while m >= 0:
        x = current[m]
        p = left[x]
        while p != x:
            uncover(col[p], left, right, up, down, col, size)
            p = left[p]
        uncover(chosen[m], left, right, up, down, col, size)
        m -= 1
    ctrl[LEVEL] = 0
    ctrl[PC] = ENTER


class Arena:
    """The four-way linked node structure for one instance.

    An arena belongs to one search at a time.
    """

    def __init__(self, instance: Instance):
        ncols = instance.n_columns
        nnodes = 1 + ncols + instance.node_count
        self.ncols = ncols
        self.left = np.zeros(nnodes, dtype=np.int32)
        self.right = np.zeros(nnodes, dtype=np.int32)
        self.up = np.arange(nnodes, dtype=np.int32)
        self.down = np.arange(nnodes, dtype=np.int32)
        self.col = np.zeros(nnodes, dtype=np.int32)
        self.row = np.zeros(nnodes, dtype=np.int32)
        self.size = np.zeros(nnodes, dtype=np.int32)
        self.labels = instance.labels

        # header ring: primary columns in ordinal order, secondary self-linked
        prev = 0
        for c in range(ncols):
            h = c + 1
            self.col[h] = h
            if instance.is_primary(c):
                self.left[h] = prev
                self.right[prev] = h
                prev = h
            else:
                self.left[h] = h
                self.right[h] = h
        self.right[prev] = 0
        self.left[0] = prev

        x = ncols + 1
        for row_id, cols in enumerate(instance.rows, start=1):
            first = x
            for k, c in enumerate(cols):
                h = c + 1
                self.col[x] = h
                self.row[x] = row_id
                # append at the bottom of the column: rows stay in id order
                self.up[x] = self.up[h]
                self.down[x] = h
                self.down[self.up[h]] = x
                self.up[h] = x
                self.size[h] += 1
                self.left[x] = x - 1 if k else first + len(cols) - 1
                self.right[x] = x + 1 if k < len(cols) - 1 else first
                x += 1

    @property
    def links(self):
        return (self.left, self.right, self.up, self.down, self.col, self.size)

    def header(self, label: str) -> int:
        return self.labels.index(label) + 1

    def cover(self, label: str) -> int:
        return int(cover(self.header(label), *self.links))

    def uncover(self, label: str) -> None:
        uncover(self.header(label), *self.links)

    def ring(self) -> list[str]:
        """Labels of the headers currently in the primary ring."""
        out = []
        h = int(self.right[0])
        while h != 0:
            out.append(self.labels[h - 1])
            h = int(self.right[h])
        return out

    def snapshot(self) -> bytes:
        return b"".join(a.tobytes() for a in self.links)

    def live_nodes(self) -> int:
        n = 0
        for h in range(1, self.ncols + 1):
            x = int(self.down[h])
            while x != h:
                n += 1
                x = int(self.down[x])
        return n

    def check_links(self) -> None:
        """Assert every list is circular and consistent and the sizes are right."""
        L, R, U, D = self.left, self.right, self.up, self.down
        # primary ring
        seen = 0
        h = int(R[0])
        while h != 0:
            assert L[R[h]] == h and R[L[h]] == h, f"ring broken at header {h}"
            seen += 1
            assert seen <= self.ncols, "header ring does not close"
            h = int(R[h])
        for h in range(1, self.ncols + 1):
            count = 0
            x = int(D[h])
            assert U[D[h]] == h
            while x != h:
                assert D[U[x]] == x and U[D[x]] == x, f"column list broken at node {x}"
                assert self.col[x] == h
                count += 1
                assert count <= len(L), "column list does not close"
                x = int(D[x])
            assert count == self.size[h], f"size of header {h} is {self.size[h]}, list has {count}"
        for x in range(self.ncols + 1, len(L)):
            assert R[L[x]] == x and L[R[x]] == x, f"row list broken at node {x}"
