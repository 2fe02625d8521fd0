"""Packing phase: grow the covered set S one whole progression at a time.

Every cell enters S with a journaled provenance (seeded from a mark, or
added while packing a difference b with its predecessor cell already in S),
so a construction for any covered target falls out of a backward walk.
"""

from __future__ import annotations

from .errors import InputError, InvariantViolation
from .modmath import InverseTable
from .sumset_state import MarkTable, OpLog

__all__ = ["CoverageSet", "add_single", "fillgap_add_ap", "seed_from_marks"]


class CoverageSet:
    """Covered subset of Z_n: boolean membership, O(1) any-member/any-non-member.

    0 is seeded first in every pipeline, so any_member is simply 0. The
    complement cursor only moves forward; across a whole packing run the
    non-member lookups cost O(n) amortized.
    """

    __slots__ = ("n", "member", "size", "cursor")

    def __init__(self, n: int):
        self.n = n
        self.member = [False] * n
        self.size = 0
        self.cursor = 0

    def add(self, x: int) -> None:
        if self.member[x]:
            raise InvariantViolation(f"cell {x} added twice")
        self.member[x] = True
        self.size += 1

    def any_member(self) -> int:
        if not self.member[0]:
            raise InvariantViolation("coverage set not seeded with 0")
        return 0

    def any_nonmember(self) -> int:
        member = self.member
        n = self.n
        while self.cursor < n and member[self.cursor]:
            self.cursor += 1
        if self.cursor >= n:
            raise InvariantViolation("coverage set is full")
        return self.cursor


def add_single(S: CoverageSet, b: int, inv_table: InverseTable) -> int:
    """Find c not in S with c - b in S, by binary search along multiples of b.

    S itself is left unchanged; the caller inserts. O(log n) membership
    queries.
    """
    n = S.n
    if b % n == 0:
        raise InputError("difference b must be nonzero")
    if S.size >= n:
        raise InputError("coverage set already full")
    member = S.member
    binv = inv_table.inv[b % n]
    x = 0  # position of the member 0 in the rescaled coordinates
    y = S.any_nonmember() * binv % n
    while y > x + 1:
        mid = (x + y) // 2
        if member[mid * b % n]:
            x = mid
        else:
            y = mid
    return (x + 1) * b % n


def fillgap_add_ap(S: CoverageSet, b: int, k: int, log: OpLog,
                   inv_table: InverseTable,
                   counters: dict | None = None) -> list[int]:
    """Add up to k new cells to S along difference b, each chained to S.

    Works in coordinates rescaled by b^-1, where the job is: find v in S
    with v+1 missing, insert v+1; repeat k times. The gap-splitting
    recursion (realized with an explicit stack) makes that cost
    O(log n + k) instead of k binary searches. Stops early if S fills up;
    every inserted cell t satisfies t - b in S at its insertion moment and
    is journaled as packed with difference b.
    """
    n = S.n
    if b % n == 0:
        raise InputError("difference b must be nonzero")
    if k < 1:
        raise InputError(f"progression length must be >= 1, got {k}")
    added: list[int] = []
    if S.size >= n:
        return added
    if S.size == 0:
        raise InvariantViolation("packing started from an empty coverage set")
    member = S.member
    b = b % n
    binv = inv_table.inv[b]
    depth_cap = (n - 1).bit_length()
    calls = 0
    max_depth = 0

    while len(added) < k and S.size < n:
        # each outer round starts from the member 0 and the complement cursor
        stack = [[0, S.any_nonmember() * binv % n, -1, 0]]
        while stack:
            frame = stack[-1]
            fx, fy, fmid, stage = frame
            if stage == 0:
                calls += 1
                if len(stack) > max_depth:
                    max_depth = len(stack)
                    if max_depth > depth_cap:
                        raise InvariantViolation(
                            f"gap recursion depth {max_depth} exceeds log2 cap {depth_cap}"
                        )
                if len(added) >= k:
                    stack.pop()
                    continue
                if (fy - fx) % n == 1:
                    _insert(S, log, added, fy, b, member, n)
                    stack.pop()
                    continue
                yp = fy if fy > fx else fy + n
                mid = (fx + yp) // 2
                if mid >= n:
                    mid -= n
                frame[2] = mid
                frame[3] = 1
                if not member[mid * b % n]:
                    stack.append([fx, mid, -1, 0])
                continue
            if stage == 1:
                frame[3] = 2
                ym1 = (fy - 1) % n
                if not member[ym1 * b % n]:
                    stack.append([frame[2], ym1, -1, 0])
                continue
            stack.pop()
            if len(added) < k:
                _insert(S, log, added, fy, b, member, n)
    if counters is not None:
        counters["calls"] = counters.get("calls", 0) + calls
        counters["max_depth"] = max(counters.get("max_depth", 0), max_depth)
    return added


def _insert(S: CoverageSet, log: OpLog, added: list[int],
            pos: int, b: int, member, n: int) -> None:
    cell = pos * b % n
    if not member[(pos - 1) % n * b % n]:
        raise InvariantViolation(
            f"chain broken: predecessor of cell {cell} (difference {b}) not covered"
        )
    S.add(cell)
    log.add_pack(cell, b)
    added.append(cell)


def seed_from_marks(p: int, marks: MarkTable, log: OpLog) -> CoverageSet:
    """Start packing from every marked cell instead of from {0} alone.

    Each marked cell c*i enters with provenance "c copies of i"; 0 enters
    with the empty provenance.
    """
    S = CoverageSet(p)
    S.add(0)
    log.add_base(0, 0, 0)
    mark_c = marks.mark_c
    mark_i = marks.mark_i
    for cell in range(p):
        c = mark_c[cell]
        if c:
            S.add(cell)
            log.add_base(cell, c, mark_i[cell])
    return S
