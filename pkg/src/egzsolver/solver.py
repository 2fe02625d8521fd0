"""Pipelines for the prime-case subset-sum lemma and certificate recovery.

Every fast path journals its rewrites; after packing covers the target, the
journal is replayed backwards, converting the demand on transformed
progressions into a demand on the original input values, which then maps to
concrete input indices.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, InvariantViolation, RecoveryError
from .modmath import batch_inverses, is_prime
from .oracle import dp_subset_solve
from .packing import CoverageSet, add_single, fillgap_add_ap, seed_from_marks
from .sumset_state import (MarkTable, Op1Record, Op2Record, OpLog, ResidueState,
                           drop, init_from_input)
from .transform import (Outcome, enrichment_step, growth_step, trim_step,
                        two_coin_solve)

__all__ = [
    "ConstructionResult",
    "P_MIN",
    "solve_lemma2",
    "solve_lemma2_practical",
    "solve_lemma2_theoretical",
    "solve_lemma2_nlogn",
    "special_construct_I",
    "special_construct_II",
    "build_position_index",
    "recover_construction",
]

# Below this modulus the growth machinery cannot beat the plain pipeline:
# its entry phase k >= 1000 would leave fewer than ~1000 progressions.
P_MIN = 1 << 20


@dataclass
class ConstructionResult:
    """A verified subset-sum witness: distinct input positions and their sum."""

    target: int
    indices: list[int]
    value_sum: int
    algorithm: str


def _validate_lemma_input(p: int, values) -> list[int]:
    if not is_prime(p):
        raise InputError(f"modulus {p} is not prime")
    vals = list(values)
    if len(vals) != p - 1:
        raise InputError(f"expected {p - 1} values, got {len(vals)}")
    for pos, v in enumerate(vals):
        if not 1 <= v <= p - 1:
            raise InputError(f"value {v} at index {pos} outside [1, {p - 1}]")
    return vals


def special_construct_I(p: int, i: int, target: int, g: int) -> list[int]:
    """Demand when one difference has length n-1: the right multiple of i."""
    D = [0] * p
    D[i] = (target - g) * pow(i, -1, p) % p
    return D


def special_construct_II(p: int, marks: MarkTable, target: int, g: int) -> list[int]:
    """Demand when marked multiples partition the nonzero residues."""
    D = [0] * p
    t0 = (target - g) % p
    if t0 == 0:
        return D
    c = marks.mark_c[t0]
    if c == 0:
        raise InvariantViolation(
            f"cell {t0} unmarked although marked multiples should cover everything"
        )
    D[marks.mark_i[t0]] = c
    return D


def build_position_index(values) -> dict[int, list[int]]:
    """Input positions grouped by value, for repeated recoveries on one journal."""
    positions: dict[int, list[int]] = {}
    for idx, v in enumerate(values):
        positions.setdefault(v, []).append(idx)
    return positions


def recover_construction(p: int, values, log: OpLog, g: int, target: int,
                         algorithm: str, base_demand: list[int] | None = None,
                         positions: dict[int, list[int]] | None = None,
                         ) -> ConstructionResult:
    """Turn the journal into explicit input indices summing to the target.

    Without a base demand, walks the packing chain of cell (target - g):
    each packed cell demands one copy of its difference plus whatever its
    predecessor demands; a seeded cell demands its mark. The journal is
    then replayed newest-first: swap records push excess demand back from
    the grown difference onto the consumed one in c-for-d chunks, and
    fusion records convert demanded copies of the fused difference into
    coin counts on the two originals. Finally the per-value demand maps
    onto distinct input positions.
    """
    target %= p
    touched: set[int] = set()
    if base_demand is not None:
        D = base_demand
        touched.update(v for v in range(p) if D[v])
    else:
        D = [0] * p
        t0 = (target - g) % p
        chain = log.chain_b
        touched_add = touched.add
        while True:
            b = chain[t0]
            if b < 0:
                break
            D[b] += 1
            touched_add(b)
            t0 -= b
            if t0 < 0:
                t0 += p
        ridx = log.cell_origin[t0]
        if ridx < 0:
            raise RecoveryError(f"cell {t0} has no provenance record")
        rec = log.records[ridx]
        if rec.c:
            D[rec.i] += rec.c
            touched.add(rec.i)
    for pos in range(len(log.records) - 1, -1, -1):
        rec = log.records[pos]
        kind = type(rec)
        if kind is Op1Record:
            excess = D[rec.i] - rec.pre_i
            if excess > 0:
                chunks = -(-excess // rec.c)
                if chunks > rec.y:
                    raise RecoveryError(
                        f"record {pos}: demand {D[rec.i]} needs {chunks} chunks, "
                        f"only {rec.y} were performed"
                    )
                D[rec.i] -= chunks * rec.c
                D[rec.j] += chunks * rec.d
                touched.add(rec.j)
                if D[rec.i] < 0:
                    raise RecoveryError(f"record {pos}: demand on {rec.i} went negative")
        elif kind is Op2Record:
            base = rec.c * rec.d - rec.c - rec.d + 1
            u = rec.v * rec.d + rec.w * rec.c - 2 * base
            m = D[rec.z] - rec.z_prior
            if m < 0:
                m = 0
            if m > u:
                raise RecoveryError(
                    f"record {pos}: {m} copies of {rec.z} attributed to a "
                    f"progression of length {u}"
                )
            a1, b1 = two_coin_solve(rec.d, rec.c, rec.v, rec.w, base + m)
            D[rec.z] -= m
            D[rec.i] += a1
            D[rec.j] += b1
            touched.add(rec.i)
            touched.add(rec.j)
    if D[0]:
        raise RecoveryError(f"demand of {D[0]} on the zero difference")
    total = sum(D[v] * v for v in touched)
    if total % p != target:
        raise RecoveryError(
            f"replayed demand sums to {total % p}, expected {target}"
        )
    chosen: list[int] = []
    if positions is not None:
        for v in touched:
            need = D[v]
            if need:
                pool = positions.get(v, ())
                if len(pool) < need:
                    raise RecoveryError(
                        f"demand of {need} copies of value {v}, input has {len(pool)}"
                    )
                chosen.extend(pool[:need])
    else:
        wanted = {v: D[v] for v in touched if D[v]}
        for idx, v in enumerate(values):
            left = wanted.get(v, 0)
            if left:
                chosen.append(idx)
                wanted[v] = left - 1
        if any(wanted.values()):
            unmet = {v: c for v, c in wanted.items() if c}
            raise RecoveryError(f"demand exceeds input multiplicities: {unmet}")
    chosen.sort()
    value_sum = sum(values[idx] for idx in chosen) % p
    if value_sum != target:
        raise RecoveryError(f"chosen indices sum to {value_sum}, expected {target}")
    return ConstructionResult(target, chosen, value_sum, algorithm)


def _finish_special(p, values, log, state, outcome, idx, marks, target):
    if outcome is Outcome.SPECIAL_CASE_I:
        D = special_construct_I(p, idx, target, state.g)
        tag = "special_I"
    else:
        D = special_construct_II(p, marks, target, state.g)
        tag = "special_II"
    return recover_construction(p, values, log, state.g, target, tag, base_demand=D)


def solve_lemma2_practical(p: int, values, target: int) -> ConstructionResult:
    """Trim to phase ~log2(p), seed the covered set from the marks, pack the rest."""
    vals = _validate_lemma_input(p, values)
    target %= p
    state = init_from_input(p, vals)
    log = OpLog(p)
    marks = MarkTable(p)
    k = max(2, p.bit_length() - 1)
    rep = trim_step(state, marks, log, k)
    if rep.outcome is not Outcome.PHASE_COMPLETE:
        return _finish_special(p, vals, log, state, rep.outcome,
                               rep.special_index, marks, target)
    inv = batch_inverses(p)
    S = seed_from_marks(p, marks, log)
    A = state.A
    C = marks.C
    for i in range(1, p):
        if S.size >= p:
            break
        gap = A[i] - C[i]
        if gap > 0:
            fillgap_add_ap(S, i, gap, log, inv)
    if S.size != p:
        raise InvariantViolation(
            f"packing left {p - S.size} cells uncovered (weight {state.W})"
        )
    return recover_construction(p, vals, log, state.g, target, "practical")


def solve_lemma2_nlogn(p: int, values, target: int) -> ConstructionResult:
    """Baseline: binary-search one new covered cell per input value."""
    vals = _validate_lemma_input(p, values)
    target %= p
    inv = batch_inverses(p)
    log = OpLog(p)
    S = CoverageSet(p)
    S.add(0)
    log.add_base(0, 0, 0)
    for v in vals:
        c = add_single(S, v, inv)
        S.add(c)
        log.add_pack(c, v)
    if S.size != p:
        raise InvariantViolation(f"single-element packing covered {S.size} of {p}")
    return recover_construction(p, vals, log, 0, target, "nlogn")


def solve_lemma2_theoretical(p: int, values, target: int) -> ConstructionResult:
    """Enrich, trim deep, then collapse diversity with growth passes and pack.

    Below P_MIN the growth entry cost cannot pay off and the plain pipeline
    is used unchanged.
    """
    if p < P_MIN:
        return solve_lemma2_practical(p, values, target)
    vals = _validate_lemma_input(p, values)
    target %= p
    state = init_from_input(p, vals)
    log = OpLog(p)
    n = p
    marks = MarkTable(p)
    rep = enrichment_step(state, marks, log, 2)
    if rep.outcome is not Outcome.TARGET_REACHED:
        return _finish_special(p, vals, log, state, rep.outcome,
                               rep.special_index, marks, target)
    marks = MarkTable(p)
    trep = trim_step(state, marks, log, 1000)
    if trep.outcome is not Outcome.PHASE_COMPLETE:
        return _finish_special(p, vals, log, state, trep.outcome,
                               trep.special_index, marks, target)
    A = state.A
    for i in range(1, n):
        if 0 < A[i] < 1000:
            drop(state, i, 0)
    if state.W < n:
        raise InvariantViolation(
            f"weight {state.W} below n after dropping short progressions"
        )
    _thin_to_total(state, n)
    k = 1000
    while True:
        grep = growth_step(state, log, k)
        if grep.outcome not in (Outcome.GROWTH_COMPLETE,):
            return _finish_special(p, vals, log, state, grep.outcome,
                                   grep.special_index, grep.abort_marks, target)
        k = grep.k_new
        if k >= max(2, p.bit_length() - 1):
            break
    _thin_to_total(state, n - 1, exact=True)
    inv = batch_inverses(p)
    S = CoverageSet(p)
    S.add(0)
    log.add_base(0, 0, 0)
    for i in range(1, n):
        if S.size >= p:
            break
        if A[i] > 0:
            fillgap_add_ap(S, i, A[i], log, inv)
    if S.size != p:
        raise InvariantViolation(f"packing covered {S.size} of {p} cells")
    return recover_construction(p, vals, log, state.g, target, "theoretical")


def _thin_to_total(state: ResidueState, want: int, exact: bool = False) -> None:
    """Keep the heaviest progressions until their total reaches ``want``.

    With ``exact`` the last kept piece is trimmed so the total equals
    ``want`` exactly; everything else is dropped.
    """
    pieces = sorted(
        ((state.A[i], i) for i in range(1, state.n) if state.A[i] > 0),
        reverse=True,
    )
    total = 0
    for length, i in pieces:
        if total >= want:
            drop(state, i, 0)
        elif exact and total + length > want:
            drop(state, i, want - total)
            total = want
        else:
            total += length
    if total < want:
        raise InvariantViolation(f"only total length {total} available, need {want}")


def solve_lemma2(p: int, values, target: int, algorithm: str = "practical",
                 ) -> ConstructionResult:
    """Dispatch to one of the subset-sum pipelines by name."""
    if algorithm == "dp":
        vals = _validate_lemma_input(p, values)
        idxs = dp_subset_solve(p, vals, target)
        value_sum = sum(vals[i] for i in idxs) % p
        return ConstructionResult(target % p, sorted(idxs), value_sum, "dp")
    if algorithm == "nlogn":
        return solve_lemma2_nlogn(p, values, target)
    if algorithm == "practical":
        return solve_lemma2_practical(p, values, target)
    if algorithm == "theoretical":
        return solve_lemma2_theoretical(p, values, target)
    raise InputError(f"unknown algorithm {algorithm!r}")
