"""Mutable representation of a sumset of arithmetic progressions over Z_n.

The sumset sum_i AP(i, A[i]) is stored as the multiplicity array ``A``
together with its cached weight W (total length), diversity s (number of
nonzero entries) and the accumulated construction shift g. Marking
bookkeeping lives in :class:`MarkTable`; every operation that must be
undone during certificate recovery is journaled in :class:`OpLog`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, InvariantViolation

__all__ = [
    "ResidueState",
    "MarkTable",
    "OpLog",
    "Op1Record",
    "Op2Record",
    "PackRecord",
    "BaseRecord",
    "IndexRing",
    "init_from_input",
    "drop",
    "assert_invariants",
]


class ResidueState:
    """Multiplicity array over Z_n plus cached weight, diversity and shift."""

    __slots__ = ("n", "A", "W", "s", "g")

    def __init__(self, n: int):
        self.n = n
        self.A = [0] * n
        self.W = 0
        self.s = 0
        self.g = 0

    def set_count(self, i: int, new: int) -> None:
        """Assign A[i] keeping W and s consistent."""
        old = self.A[i]
        if new < 0:
            raise InvariantViolation(f"negative length {new} for difference {i}")
        self.A[i] = new
        self.W += new - old
        if old == 0 and new > 0:
            self.s += 1
        elif old > 0 and new == 0:
            self.s -= 1

    def add_count(self, i: int, delta: int) -> None:
        self.set_count(i, self.A[i] + delta)

    def recompute(self) -> tuple[int, int]:
        """Weight and diversity recomputed from A (debug cross-check)."""
        return sum(self.A), sum(1 for a in self.A if a > 0)


class MarkTable:
    """Per-cell marks (c, i) and per-difference counters C.

    A cell m carries at most one mark; ``mark_c[m] == 0`` means empty. For
    every difference i the marks (1, i) .. (C[i], i) are exactly the live
    ones, each sitting on cell c*i mod n.
    """

    __slots__ = ("n", "mark_c", "mark_i", "C", "marked_cells")

    def __init__(self, n: int):
        self.n = n
        self.mark_c = [0] * n
        self.mark_i = [0] * n
        self.C = [0] * n
        self.marked_cells = 0

    def place(self, cell: int, c: int, i: int) -> None:
        if self.mark_c[cell] != 0:
            raise InvariantViolation(f"cell {cell} already marked")
        self.mark_c[cell] = c
        self.mark_i[cell] = i
        self.C[i] += 1
        self.marked_cells += 1

    def clear_cell(self, cell: int) -> None:
        self.mark_c[cell] = 0
        self.mark_i[cell] = 0
        self.marked_cells -= 1

    def unmark_above(self, i: int, new_len: int) -> None:
        """Remove marks (e, i) with new_len < e <= C[i], then set C[i] = new_len."""
        n = self.n
        for e in range(new_len + 1, self.C[i] + 1):
            cell = e * i % n
            if self.mark_c[cell] == e and self.mark_i[cell] == i:
                self.clear_cell(cell)
        self.C[i] = new_len


@dataclass(slots=True)
class Op1Record:
    """Batched short-collision swap: A[i] += y*c, A[j] -= y*d with c*i = d*j.

    ``pre_i`` is A[i] just before the update; reverse replay compares the
    demand on i against it to decide how many c-for-d chunks to convert.
    """

    i: int
    j: int
    c: int
    d: int
    y: int
    pre_i: int


@dataclass(slots=True)
class Op2Record:
    """Fusion of AP(i, v) + AP(j, w) into a shifted AP(z, u).

    c and d are the coprime multipliers with c*i = d*j; v and w are the
    lengths consumed from i and j; u is derived as v*d + w*c - 2*(cd-c-d+1).
    ``shift`` is the amount added to the global shift g. ``z_prior`` is the
    length already available on difference z from other sources at the
    moment this operation ran, which reverse replay uses to decide how many
    demanded copies of z must be converted through this record.
    """

    i: int
    j: int
    c: int
    d: int
    v: int
    w: int
    z: int
    shift: int
    z_prior: int

    @property
    def u(self) -> int:
        base = self.c * self.d - self.c - self.d + 1
        return self.v * self.d + self.w * self.c - 2 * base


@dataclass(slots=True)
class PackRecord:
    """Cell added to the covered set while packing difference b."""

    cell: int
    b: int


@dataclass(slots=True)
class BaseRecord:
    """Cell seeded into the covered set as c copies of difference i."""

    cell: int
    c: int
    i: int


class OpLog:
    """Append-only journal of transformation and packing events.

    ``records`` is chronological. ``cell_origin`` maps each covered cell to
    the index of the Pack/Base record that introduced it, giving the O(1)
    lookup the demand walk needs.
    """

    __slots__ = ("n", "records", "cell_origin", "chain_b")

    def __init__(self, n: int):
        self.n = n
        self.records: list = []
        self.cell_origin = [-1] * n
        # chain_b[cell] = difference it was packed along, -1 for seeded cells
        self.chain_b = [-1] * n

    def add_op1(self, i, j, c, d, y, pre_i) -> None:
        self.records.append(Op1Record(i, j, c, d, y, pre_i))

    def add_op2(self, i, j, c, d, v, w, z, shift, z_prior) -> None:
        self.records.append(Op2Record(i, j, c, d, v, w, z, shift, z_prior))

    def add_pack(self, cell: int, b: int) -> None:
        if self.cell_origin[cell] != -1:
            raise InvariantViolation(f"cell {cell} already has an origin record")
        self.cell_origin[cell] = len(self.records)
        self.chain_b[cell] = b
        self.records.append(PackRecord(cell, b))

    def add_base(self, cell: int, c: int, i: int) -> None:
        if self.cell_origin[cell] != -1:
            raise InvariantViolation(f"cell {cell} already has an origin record")
        self.cell_origin[cell] = len(self.records)
        self.records.append(BaseRecord(cell, c, i))


class IndexRing:
    """FIFO worklist of candidate indices with an in-collection flag each.

    Insert, pop and discard are O(1); an index sits in the ring at most once.
    Validity of a popped index is the caller's business (lazy invalidation).
    """

    __slots__ = ("items", "flags", "head")

    def __init__(self, n: int):
        self.items: list[int] = []
        self.flags = [False] * n
        self.head = 0

    def insert(self, i: int) -> None:
        if not self.flags[i]:
            self.flags[i] = True
            self.items.append(i)

    def pop(self) -> int | None:
        items = self.items
        if self.head >= len(items):
            return None
        i = items[self.head]
        self.head += 1
        self.flags[i] = False
        return i

    def __bool__(self) -> bool:
        return self.head < len(self.items)


def init_from_input(p: int, values) -> ResidueState:
    """Build the initial state: A[i] = multiplicity of i among the inputs."""
    vals = list(values)
    if len(vals) != p - 1:
        raise InputError(f"expected {p - 1} values, got {len(vals)}")
    state = ResidueState(p)
    A = state.A
    for pos, v in enumerate(vals):
        if not 1 <= v <= p - 1:
            raise InputError(f"value {v} at index {pos} outside [1, {p - 1}]")
        A[v] += 1
    state.W = p - 1
    state.s = sum(1 for a in A if a > 0)
    return state


def drop(state: ResidueState, i: int, new_count: int) -> None:
    """Reduce A[i] to new_count (never journaled: dropped capacity is dead)."""
    if not 0 <= new_count <= state.A[i]:
        raise InputError(
            f"drop to {new_count} outside [0, {state.A[i]}] for difference {i}"
        )
    state.set_count(i, new_count)


def assert_invariants(state: ResidueState, marks: MarkTable) -> None:
    """Raise InvariantViolation on any broken state/mark invariant."""
    n = state.n
    A = state.A
    w, s = state.recompute()
    if state.W != w:
        raise InvariantViolation(f"cached W={state.W} but sum(A)={w}")
    if state.s != s:
        raise InvariantViolation(f"cached s={state.s} but recounted {s}")
    if A[0] != 0:
        raise InvariantViolation("A[0] must stay 0")
    for i in range(n):
        if A[i] < 0:
            raise InvariantViolation(f"A[{i}] negative")
    occupied = 0
    for cell in range(n):
        c = marks.mark_c[cell]
        if c == 0:
            continue
        occupied += 1
        i = marks.mark_i[cell]
        if cell != c * i % n:
            raise InvariantViolation(f"mark ({c},{i}) sits on wrong cell {cell}")
        if c > A[i]:
            raise InvariantViolation(f"mark ({c},{i}) exceeds A[{i}]={A[i]}")
    total_c = 0
    for i in range(n):
        ci = marks.C[i]
        if ci > A[i]:
            raise InvariantViolation(f"C[{i}]={ci} exceeds A[{i}]={A[i]}")
        total_c += ci
        for c in range(1, ci + 1):
            cell = c * i % n
            if marks.mark_c[cell] != c or marks.mark_i[cell] != i:
                raise InvariantViolation(
                    f"expected mark ({c},{i}) on cell {cell}, "
                    f"found ({marks.mark_c[cell]},{marks.mark_i[cell]})"
                )
    if total_c != occupied:
        raise InvariantViolation(
            f"sum of C is {total_c} but {occupied} cells are marked"
        )
    if total_c > n - 1:
        raise InvariantViolation(f"sum of C = {total_c} exceeds n-1")
