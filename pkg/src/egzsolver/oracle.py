"""Independent brute-force references used for testing and as small-n fallbacks.

Nothing here is shared with the fast pipelines; these routines exist
precisely so the two sides can disagree loudly when one of them is wrong.
"""

from __future__ import annotations

from .errors import Infeasible, InputError

__all__ = ["dp_subset_solve", "brute_sumset", "egz_brute"]

_BRUTE_SUMSET_CAP = 10_000
_EGZ_BRUTE_CAP = 12


def dp_subset_solve(p: int, values, target: int) -> list[int]:
    """Witness subset of ``values`` summing to ``target`` mod p, by reachability DP.

    Stores one parent link per newly reached residue (first reach wins), so
    witnesses are deterministic. Raises Infeasible when no subset works.
    Primality of p is not required here.
    """
    if p < 2:
        raise InputError(f"modulus must be at least 2, got {p}")
    target %= p
    parent: list[tuple[int, int] | None] = [None] * p
    reached = [False] * p
    reached[0] = True
    for idx, raw in enumerate(values):
        v = raw % p
        frontier = [r for r in range(p) if reached[r]]
        for r in frontier:
            nr = r + v
            if nr >= p:
                nr -= p
            if not reached[nr]:
                reached[nr] = True
                parent[nr] = (idx, r)
    if not reached[target]:
        raise Infeasible(f"no subset reaches {target} mod {p}")
    picked = []
    cur = target
    while cur != 0:
        idx, prev = parent[cur]
        picked.append(idx)
        cur = prev
    picked.reverse()
    return picked


def _cyclic_shift(mask: int, a: int, n: int, full: int) -> int:
    a %= n
    return ((mask << a) | (mask >> (n - a))) & full if a else mask


def brute_sumset(aps, n: int) -> set[int]:
    """Exact sumset of a list of (difference, length) progressions in Z_n.

    Each progression contributes {0, a, 2a, ..., k*a}. Computed by iterated
    boolean convolution over a bitmask; guarded to test scale.
    """
    total = sum(k for _, k in aps)
    if total > _BRUTE_SUMSET_CAP:
        raise InputError(f"total length {total} exceeds brute-force cap")
    full = (1 << n) - 1
    acc = 1  # {0}
    for a, k in aps:
        cur = acc
        shifted = acc
        for _ in range(k):
            shifted = _cyclic_shift(shifted, a, n, full)
            cur |= shifted
        acc = cur
    return {r for r in range(n) if acc >> r & 1}


def egz_brute(n: int, values) -> list[int]:
    """Indices of an n-subset of 2n-1 values with sum divisible by n.

    Exhaustive DP over (prefix, chosen count, residue) with parent links;
    guaranteed to succeed, guarded to combinatorial scale.
    """
    if n > _EGZ_BRUTE_CAP:
        raise InputError(f"n={n} exceeds brute-force cap {_EGZ_BRUTE_CAP}")
    vals = [v % n for v in values]
    if len(vals) != 2 * n - 1:
        raise InputError(f"expected {2 * n - 1} values, got {len(vals)}")
    # parent[c][r] = (index, prev_r) for the first way to reach c picks, sum r
    parent: list[list[tuple[int, int] | None]] = [[None] * n for _ in range(n + 1)]
    reach = [[False] * n for _ in range(n + 1)]
    reach[0][0] = True
    for idx, v in enumerate(vals):
        for c in range(min(idx, n - 1), -1, -1):
            row = reach[c]
            nxt = reach[c + 1]
            for r in range(n):
                if row[r]:
                    nr = (r + v) % n
                    if not nxt[nr]:
                        nxt[nr] = True
                        parent[c + 1][nr] = (idx, r)
    if not reach[n][0]:  # impossible for any 2n-1 inputs
        raise AssertionError("no zero-sum n-subset found")  # pragma: no cover
    picked = []
    c, r = n, 0
    while c > 0:
        idx, prev = parent[c][r]
        picked.append(idx)
        r = prev
        c -= 1
    picked.reverse()
    return picked
