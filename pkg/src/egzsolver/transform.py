"""Transformation phase: collision resolution and the marking processes.

Three processes rewrite the sumset while preserving, constructively, the set
of reachable targets:

* trim: phase-ordered marking, collisions resolved by the batched swap
  (``apply_op1``); kills short collisions and never loses weight.
* enrichment: marking with fusion resolution (``apply_op2``) until the total
  length reaches a multiple of n.
* growth: one pass of mid-range marking that fuses collisions into a fresh
  next-generation container, collapsing diversity from n/k to n/k^(4/3).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd

from .errors import InputError, InvariantViolation
from .modmath import ext_gcd, iroot
from .sumset_state import IndexRing, MarkTable, OpLog, ResidueState, drop

__all__ = [
    "Outcome",
    "TrimReport",
    "EnrichReport",
    "GrowthReport",
    "StepMonitor",
    "apply_op1",
    "two_coin_solve",
    "apply_op2",
    "resolve_collision_noncoprime",
    "trim_step",
    "enrichment_step",
    "growth_step",
    "detect_special_case",
]


class Outcome(enum.Enum):
    PHASE_COMPLETE = "phase-complete"
    TARGET_REACHED = "target-reached"
    GROWTH_COMPLETE = "growth-complete"
    SPECIAL_CASE_I = "special-case-i"
    SPECIAL_CASE_II = "special-case-ii"


_SPECIALS = (Outcome.SPECIAL_CASE_I, Outcome.SPECIAL_CASE_II)


@dataclass
class TrimReport:
    phase_reached: int
    outcome: Outcome
    special_index: int | None
    cells_marked: int


@dataclass
class EnrichReport:
    target_multiple: int
    outcome: Outcome
    special_index: int | None
    final_W: int


@dataclass
class GrowthReport:
    k_new: int
    outcome: Outcome
    special_index: int | None
    abort_marks: MarkTable | None
    collisions: int


class StepMonitor:
    """Collects soft assertion-stream violations during an instrumented run.

    The hard invariants (coprime collision multipliers, single cell
    occupancy, swap orientation) raise immediately in the operations
    themselves; the monitor additionally audits the behavioural claims that
    are cheap to watch but not structurally enforced: weight never
    decreases, marking multipliers are non-decreasing in trim, and once a
    difference has all its multiples marked it stays that way.
    """

    __slots__ = ("violations", "marks_placed", "collisions", "ordered", "_prev_c", "_frozen")

    def __init__(self, ordered: bool = False):
        self.violations: list[str] = []
        self.marks_placed = 0
        self.collisions = 0
        self.ordered = ordered
        self._prev_c = 0
        self._frozen: dict[int, int] = {}

    def note_mark(self, c: int, i: int) -> None:
        self.marks_placed += 1
        if self.ordered:
            if c < self._prev_c:
                self.violations.append(
                    f"marking multiplier decreased from {self._prev_c} to {c} (i={i})"
                )
            self._prev_c = c

    def note_collision(self, c: int, i: int, d: int, j: int) -> None:
        self.collisions += 1
        if gcd(c, d) != 1:
            self.violations.append(f"collision ({c},{i}) vs ({d},{j}) not coprime")

    def note_weight(self, before: int, after: int) -> None:
        if after < before:
            self.violations.append(f"weight decreased from {before} to {after}")

    def note_exhausted(self, i: int, a: int, c: int) -> None:
        if a != c:
            self.violations.append(f"difference {i} discarded with A={a} != C={c}")
        if not self.ordered:
            return  # a fusion may regrow an exhausted difference
        prev = self._frozen.get(i)
        if prev is not None and prev != a:
            self.violations.append(
                f"difference {i} was exhausted at length {prev}, later at {a}"
            )
        self._frozen[i] = a


def apply_op1(state: ResidueState, marks: MarkTable, log: OpLog,
              i: int, j: int, c: int, d: int,
              monitor: StepMonitor | None = None) -> None:
    """Resolve a trim collision: exchange copies of AP(j,d) for copies of AP(i,c).

    With c*i = d*j and the mark (d, j) live, performs the maximal batch
    y = A[j] // d of swaps: A[i] += y*c, A[j] -= y*d, then removes the marks
    on j that the shrunken length no longer supports.
    """
    n = state.n
    A = state.A
    if i == j:
        raise InvariantViolation(f"swap with identical differences i=j={i}")
    if c <= d:
        raise InvariantViolation(f"swap arrived unoriented: c={c} <= d={d}")
    if gcd(c, d) != 1:
        raise InvariantViolation(
            f"collision multipliers not coprime: ({c},{i}) vs ({d},{j})"
        )
    if c * i % n != d * j % n:
        raise InvariantViolation(f"({c},{i}) and ({d},{j}) do not share a cell")
    if A[i] < c or A[j] < d:
        raise InvariantViolation(
            f"swap lacks length: A[{i}]={A[i]} (need {c}), A[{j}]={A[j]} (need {d})"
        )
    cell = d * j % n
    if marks.mark_c[cell] != d or marks.mark_i[cell] != j:
        raise InvariantViolation(f"swap expects a live mark ({d},{j}) on cell {cell}")
    w_before = state.W
    y = A[j] // d
    pre_i = A[i]
    aj = A[j] - y * d
    A[i] = pre_i + y * c
    A[j] = aj
    state.W += y * (c - d)
    if aj == 0:
        state.s -= 1  # A[i] stays positive: it held at least c copies
    log.add_op1(i, j, c, d, y, pre_i)
    if marks.C[j] > aj:
        marks.unmark_above(j, aj)
    if monitor is not None:
        monitor.note_collision(c, i, d, j)
        monitor.note_weight(w_before, state.W)


def two_coin_solve(w: int, v: int, t: int, s: int, target: int) -> tuple[int, int]:
    """Solve a'*w + b'*v == target with 0 <= a' <= t and 0 <= b' <= s.

    Requires gcd(w, v) = 1, t >= v, s >= w and target inside the
    representability window [wv-w-v+1, tw+sv-(wv-w-v+1)]. Finds the minimal
    non-negative a' via the extended gcd, then shifts coin counts between
    the two denominations until both bounds hold.
    """
    if gcd(w, v) != 1:
        raise InputError(f"coin weights {w}, {v} are not coprime")
    if t < v or s < w:
        raise InputError(f"counts (t={t}, s={s}) below weights (v={v}, w={w})")
    base = w * v - w - v + 1
    high = t * w + s * v - base
    if not base <= target <= high:
        raise InputError(f"target {target} outside window [{base}, {high}]")
    if v == 1:
        a1 = 0
    else:
        _, x, _ = ext_gcd(w % v, v)
        a1 = (target % v) * (x % v) % v
    b1 = (target - a1 * w) // v
    if b1 > s:
        k = -(-(b1 - s) // w)
        a1 += k * v
        b1 -= k * w
    if not (0 <= a1 <= t and 0 <= b1 <= s and a1 * w + b1 * v == target):
        raise InvariantViolation(
            f"coin decomposition failed: w={w} v={v} t={t} s={s} target={target} "
            f"-> ({a1}, {b1})"
        )
    return a1, b1


def _op2_core(state: ResidueState, log: OpLog, i: int, j: int, c: int, d: int) -> int:
    """Consume AP(i, A[i]) and AP(j, A[j]), credit the fused AP on z.

    Both progressions are zeroed before the credit lands so that the gain
    survives even when z coincides with i or j (which happens whenever one
    multiplier is 1). Returns z.
    """
    n = state.n
    A = state.A
    v = A[i]
    w = A[j]
    base = c * d - c - d + 1
    u = v * d + w * c - 2 * base
    z = i * pow(d, -1, n) % n
    shift = z * base % n
    state.set_count(i, 0)
    state.set_count(j, 0)
    z_prior = A[z]
    state.add_count(z, u)
    state.g = (state.g + shift) % n
    log.add_op2(i, j, c, d, v, w, z, shift, z_prior)
    return z


def _check_op2_pre(state: ResidueState, i: int, j: int, c: int, d: int) -> None:
    n = state.n
    A = state.A
    if i == j:
        raise InvariantViolation(f"fusion with identical differences i=j={i}")
    if c == 1 and d == 1:
        raise InvariantViolation("multipliers (1,1) would force i == j")
    if gcd(c, d) != 1:
        raise InvariantViolation(
            f"collision multipliers not coprime: ({c},{i}) vs ({d},{j})"
        )
    if c * i % n != d * j % n:
        raise InvariantViolation(f"({c},{i}) and ({d},{j}) do not share a cell")
    if A[i] < c or A[j] < d:
        raise InvariantViolation(
            f"fusion lacks length: A[{i}]={A[i]} (need {c}), A[{j}]={A[j]} (need {d})"
        )


def apply_op2(state: ResidueState, marks: MarkTable, log: OpLog,
              i: int, j: int, c: int, d: int,
              monitor: StepMonitor | None = None) -> int:
    """Resolve an enrichment collision by fusing the two progressions.

    Credits u = A[i]*d + A[j]*c - 2(cd-c-d+1) copies of z = i/d = j/c,
    advances the global shift by z*(cd-c-d+1), zeroes both source
    progressions and removes every mark on their multiples. Returns z.
    """
    _check_op2_pre(state, i, j, c, d)
    w_before = state.W
    z = _op2_core(state, log, i, j, c, d)
    if marks.C[i]:
        marks.unmark_above(i, 0)
    if marks.C[j]:
        marks.unmark_above(j, 0)
    if monitor is not None:
        monitor.note_collision(c, i, d, j)
        monitor.note_weight(w_before, state.W)
    return z


def resolve_collision_noncoprime(state: ResidueState, log: OpLog,
                                 i: int, j: int, a: int, b: int,
                                 next_gen: dict[int, int]) -> int:
    """Resolve a growth collision a*i = b*j whose multipliers may share a gcd.

    Consumes AP(i, 2a) + AP(j, 2b) and credits an AP of difference
    z = i / (b/g) with length at least 2ab/g into the next-generation
    container (never back into the working state: new progressions are not
    explored in the same pass). Returns z.
    """
    n = state.n
    A = state.A
    g0 = gcd(a, b)
    c1 = a // g0
    d1 = b // g0
    if i == j:
        raise InvariantViolation(f"fusion with identical differences i=j={i}")
    if a * i % n != b * j % n:
        raise InvariantViolation(f"({a},{i}) and ({b},{j}) do not share a cell")
    if A[i] < 2 * a or A[j] < 2 * b:
        raise InvariantViolation(
            f"growth fusion lacks length: A[{i}]={A[i]} (need {2 * a}), "
            f"A[{j}]={A[j]} (need {2 * b})"
        )
    base = c1 * d1 - c1 - d1 + 1
    v = 2 * a
    w = 2 * b
    u = v * d1 + w * c1 - 2 * base
    if u < 2 * a * b // g0:
        raise InvariantViolation(
            f"fused length {u} below guarantee {2 * a * b // g0}"
        )
    z = i * pow(d1, -1, n) % n
    shift = z * base % n
    state.add_count(i, -v)
    state.add_count(j, -w)
    z_prior = A[z] + next_gen.get(z, 0)
    next_gen[z] = next_gen.get(z, 0) + u
    state.g = (state.g + shift) % n
    log.add_op2(i, j, c1, d1, v, w, z, shift, z_prior)
    return z


def trim_step(state: ResidueState, marks: MarkTable, log: OpLog,
              k_target: int, monitor: StepMonitor | None = None) -> TrimReport:
    """Run phases 1..k_target of smallest-multiplier-first marking.

    Phase c marks (c, i) for every difference whose first c-1 multiples are
    already marked and whose length allows a c-th; collisions are resolved
    with the batched swap and the marking is retried on the freed cell.
    Ends early with Special Case I the moment any length reaches n-1, or
    Special Case II when every difference has all its multiples marked.
    """
    if k_target < 1:
        raise InputError(f"target phase must be >= 1, got {k_target}")
    n = state.n
    A = state.A
    for i in range(n):
        if A[i] >= n - 1:
            return TrimReport(0, Outcome.SPECIAL_CASE_I, i, 0)
    mark_c = marks.mark_c
    mark_i = marks.mark_i
    C = marks.C
    cells_marked = 0
    cur = [i for i in range(1, n) if A[i] > 0]
    for phase in range(1, k_target + 1):
        if not cur:
            # no difference can take another mark: lengths equal mark counts
            return TrimReport(phase - 1, Outcome.SPECIAL_CASE_II, None, cells_marked)
        nxt = []
        for i in cur:
            while True:
                if C[i] >= phase or A[i] < phase:
                    if monitor is not None:
                        monitor.note_exhausted(i, A[i], C[i])
                    break
                cell = phase * i % n
                d = mark_c[cell]
                if d == 0:
                    mark_c[cell] = phase
                    mark_i[cell] = i
                    marks.marked_cells += 1
                    C[i] = phase
                    cells_marked += 1
                    if monitor is not None:
                        monitor.note_mark(phase, i)
                    nxt.append(i)
                    break
                apply_op1(state, marks, log, i, mark_i[cell], phase, d, monitor)
                if A[i] >= n - 1:
                    return TrimReport(phase, Outcome.SPECIAL_CASE_I, i, cells_marked)
                # the colliding mark is gone; retry (phase, i) on the free cell
        cur = nxt
    return TrimReport(k_target, Outcome.PHASE_COMPLETE, None, cells_marked)


def enrichment_step(state: ResidueState, marks: MarkTable, log: OpLog,
                    r_target: int, monitor: StepMonitor | None = None) -> EnrichReport:
    """Mark and fuse until the total length reaches r_target * n.

    Candidates take the smallest unmarked multiple each time. A collision
    whose fusion would already overshoot the target applies its state and
    shift changes and exits immediately, skipping the mark cleanup that
    nothing downstream would read.
    """
    if r_target < 1:
        raise InputError(f"target multiple must be >= 1, got {r_target}")
    n = state.n
    A = state.A
    if state.W < n - 1:
        raise InvariantViolation(f"enrichment entered with W={state.W} < n-1")
    target = r_target * n
    if state.W >= target:
        return EnrichReport(r_target, Outcome.TARGET_REACHED, None, state.W)
    for i in range(n):
        if A[i] >= n - 1:
            return EnrichReport(r_target, Outcome.SPECIAL_CASE_I, i, state.W)
    mark_c = marks.mark_c
    mark_i = marks.mark_i
    C = marks.C
    ring = IndexRing(n)
    for i in range(1, n):
        if A[i] > 0:
            ring.insert(i)
    while True:
        i = ring.pop()
        if i is None:
            return EnrichReport(r_target, Outcome.SPECIAL_CASE_II, None, state.W)
        while C[i] < A[i]:
            c = C[i] + 1
            cell = c * i % n
            d = mark_c[cell]
            if d == 0:
                mark_c[cell] = c
                mark_i[cell] = i
                marks.marked_cells += 1
                C[i] = c
                if monitor is not None:
                    monitor.note_mark(c, i)
                continue
            j = mark_i[cell]
            v = A[i]
            w = A[j]
            base = c * d - c - d + 1
            gain = (v * d + w * c - 2 * base) - v - w
            if state.W + gain >= target:
                # overshooting fusion: apply lengths and shift, skip cleanup
                _check_op2_pre(state, i, j, c, d)
                w_before = state.W
                z = _op2_core(state, log, i, j, c, d)
                if monitor is not None:
                    monitor.note_collision(c, i, d, j)
                    monitor.note_weight(w_before, state.W)
                if A[z] >= n - 1:
                    return EnrichReport(r_target, Outcome.SPECIAL_CASE_I, z, state.W)
                return EnrichReport(r_target, Outcome.TARGET_REACHED, None, state.W)
            z = apply_op2(state, marks, log, i, j, c, d, monitor)
            if A[z] >= n - 1:
                return EnrichReport(r_target, Outcome.SPECIAL_CASE_I, z, state.W)
            ring.insert(z)
            break  # A[i] is now exhausted
        else:
            if monitor is not None:
                monitor.note_exhausted(i, A[i], C[i])


def growth_step(state: ResidueState, log: OpLog, k: int,
                monitor: StepMonitor | None = None) -> GrowthReport:
    """One diversity-collapsing pass: from n/k surviving differences to n/k^(4/3).

    Enriches to ten times the modulus, trims to phase k, then marks only the
    mid-range multiples c in [k/2, A[i]/2] and fuses every collision into a
    next-generation container that is not re-explored this pass. Stops once
    the container holds total length n (or the collision budget is met),
    merges the container by difference and keeps the heaviest pieces
    totaling at least n.
    """
    if k < 1000:
        raise InputError(f"growth step requires k >= 1000, got {k}")
    n = state.n
    A = state.A
    k43 = iroot(k ** 4, 3)
    marks = MarkTable(n)
    erep = enrichment_step(state, marks, log, 10, monitor)
    if erep.outcome in _SPECIALS:
        return GrowthReport(k, erep.outcome, erep.special_index,
                            marks if erep.outcome is Outcome.SPECIAL_CASE_II else None, 0)
    # Shortcut: enough weight already concentrated on very long pieces. The
    # enrichment fusions tend to produce exactly this at moderate n, and
    # taking it before the trim avoids pointlessly batch-swapping pieces
    # that are a constant fraction of n (which only forces the length-(n-1)
    # early exit).
    if _keep_long_pieces(state, k43):
        return GrowthReport(k43, Outcome.GROWTH_COMPLETE, None, None, 0)
    marks = MarkTable(n)
    trep = trim_step(state, marks, log, k, monitor)
    if trep.outcome in _SPECIALS:
        return GrowthReport(k, trep.outcome, trep.special_index,
                            marks if trep.outcome is Outcome.SPECIAL_CASE_II else None, 0)
    if _keep_long_pieces(state, k43):
        return GrowthReport(k43, Outcome.GROWTH_COMPLETE, None, None, 0)
    outcome, idx, collisions = _mid_range_fusion_pass(state, log, k, k43)
    if outcome is Outcome.SPECIAL_CASE_I:
        return GrowthReport(k, outcome, idx, None, collisions)
    return GrowthReport(k43, Outcome.GROWTH_COMPLETE, None, None, collisions)


def _mid_range_fusion_pass(state: ResidueState, log: OpLog, k: int, k43: int,
                           ) -> tuple[Outcome, int | None, int]:
    """Mark multiples c*i with k/2 <= c <= A[i]/2 and fuse every collision.

    Fused progressions accumulate in a next-generation container that is not
    marked in this pass; marking proceeds level by level (smallest multiplier
    first) so the earliest collisions fuse the shortest pieces. Stops once
    the container can cover the modulus (or the collision-count target is
    met), then replaces the working state with the heaviest new pieces.
    """
    n = state.n
    A = state.A
    for i in range(1, n):
        if A[i] > k43:
            drop(state, i, k43)
    half_k = -(-k // 2)
    k13 = iroot(k, 3)
    piece_min = iroot(k ** 5, 3) // 4
    need = -(-n // piece_min)
    markable = 0
    for i in range(1, n):
        top = A[i] // 2
        if top >= half_k:
            markable += top - half_k + 1
    if markable < 2 * n:
        raise InvariantViolation(
            f"growth entered with only {markable} markable multiples (< 2n)"
        )

    gm_c = [0] * n
    gm_i = [0] * n
    placed: dict[int, list[int]] = {}
    next_gen: dict[int, int] = {}
    collisions = 0
    next_total = 0
    live = [i for i in range(1, n) if A[i] // 2 >= half_k]
    level = half_k
    max_level = k43 // 2
    done = False
    while not done:
        if level > max_level or not live:
            raise InvariantViolation(
                f"growth ran out of multiples at level {level} after "
                f"{collisions} collisions (need {need} or total {n})"
            )
        survivors = []
        for i in live:
            if A[i] // 2 < level:
                continue
            cell = level * i % n
            d = gm_c[cell]
            if d == 0:
                gm_c[cell] = level
                gm_i[cell] = i
                placed.setdefault(i, []).append(level)
                survivors.append(i)
                continue
            j = gm_i[cell]
            g0 = gcd(level, d)
            if g0 > k13:
                raise InvariantViolation(
                    f"growth collision ({level},{i}) vs ({d},{j}) has gcd {g0} "
                    f"> k^(1/3) = {k13}; the trim step should have prevented it"
                )
            z = resolve_collision_noncoprime(state, log, i, j, level, d, next_gen)
            u = log.records[-1].u
            if u < piece_min:
                raise InvariantViolation(
                    f"growth piece of length {u} below floor {piece_min}"
                )
            collisions += 1
            next_total += u
            for x in (i, j):
                for cc in placed.pop(x, ()):
                    cx = cc * x % n
                    if gm_c[cx] == cc and gm_i[cx] == x:
                        gm_c[cx] = 0
            if A[z] + next_gen.get(z, 0) >= n - 1:
                # the fused progression alone reaches every residue
                for zz, length in next_gen.items():
                    state.add_count(zz, length)
                return Outcome.SPECIAL_CASE_I, z, collisions
            if collisions >= need or next_total >= n:
                done = True
                break
            if A[i] // 2 >= level and i not in placed:
                survivors.append(i)
        live = survivors
        level += 1

    # Keep only the new generation, merged by difference, heaviest first.
    for i in range(1, n):
        if A[i]:
            drop(state, i, 0)
    pieces = sorted(((length, z) for z, length in next_gen.items()), reverse=True)
    total = 0
    for length, z in pieces:
        if total >= n:
            break
        state.add_count(z, length)
        total += length
    if total < n:
        raise InvariantViolation(f"growth kept only total length {total} < n")
    return Outcome.GROWTH_COMPLETE, None, collisions


def _keep_long_pieces(state: ResidueState, k43: int) -> bool:
    """If pieces of length >= k43 total at least n, keep a minimal prefix of them.

    Returns True after dropping everything else, leaving at most ~n/k43
    pieces whose lengths sum to at least n.
    """
    n = state.n
    A = state.A
    longs = [(A[i], i) for i in range(1, n) if A[i] >= k43]
    if sum(length for length, _ in longs) < n:
        return False
    longs.sort(reverse=True)
    kept = set()
    total = 0
    for length, i in longs:
        kept.add(i)
        total += length
        if total >= n:
            break
    for i in range(1, n):
        if A[i] and i not in kept:
            drop(state, i, 0)
    return True


def detect_special_case(state: ResidueState, marks: MarkTable):
    """Pure inspection: (Outcome.SPECIAL_CASE_I, i), (Outcome.SPECIAL_CASE_II, None), or None."""
    n = state.n
    A = state.A
    for i in range(n):
        if A[i] >= n - 1:
            return (Outcome.SPECIAL_CASE_I, i)
    if state.W >= n - 1 and all(A[i] == marks.C[i] for i in range(n)):
        return (Outcome.SPECIAL_CASE_II, None)
    return None
