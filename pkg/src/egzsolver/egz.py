"""Full zero-sum solver: prime case via sorted pairing, composite via recursion.

Given 2n-1 residues mod n, returns exactly n distinct input positions whose
values sum to 0 mod n.
"""

from __future__ import annotations

from .errors import InputError, InvariantViolation
from .modmath import counting_sort_permutation, smallest_prime_factor
from .solver import solve_lemma2

__all__ = ["solve_prime", "solve_general"]


def solve_prime(p: int, values, lemma_algorithm: str = "practical") -> list[int]:
    """Zero-sum p-subset of 2p-1 values for prime p.

    Sorts the values; p+1 equal values anywhere force a run of p equal ones,
    answered directly. Otherwise the p-1 gaps between sorted partners i and
    i+p are all nonzero, and a subset of gaps summing to minus the low half
    tells which partners to take from the high half.
    """
    vals = [v % p for v in values]
    if len(vals) != 2 * p - 1:
        raise InputError(f"expected {2 * p - 1} values, got {len(vals)}")
    perm = counting_sort_permutation(vals, p)
    svals = [vals[q] for q in perm]
    for i in range(p - 1):
        if svals[i] == svals[i + p]:
            return sorted(perm[t] for t in range(i, i + p))
    gaps = [(svals[i + p] - svals[i]) % p for i in range(p - 1)]
    target = -sum(svals[:p]) % p
    res = solve_lemma2(p, gaps, target, lemma_algorithm)
    swapped = set(res.indices)
    picked = [i + p if i in swapped else i for i in range(p - 1)]
    picked.append(p - 1)
    return sorted(perm[t] for t in picked)


def solve_general(n: int, values, lemma_algorithm: str = "practical") -> list[int]:
    """Zero-sum n-subset of 2n-1 values for any n >= 1.

    Composite n = p*a: extract 2a-1 prime-case solutions from the pool, each
    contributing its sum divided by p to a smaller instance mod a, then
    expand the recursive answer back to the original positions.
    """
    vals = list(values)
    if len(vals) != 2 * n - 1:
        raise InputError(f"expected {2 * n - 1} values, got {len(vals)}")
    if n == 1:
        return [0]
    vals = [v % n for v in vals]
    p = smallest_prime_factor(n)
    if p == n:
        return solve_prime(n, vals, lemma_algorithm)
    a = n // p
    pool = list(range(2 * n - 1))
    quotients: list[int] = []
    groups: list[list[int]] = []
    for _ in range(2 * a - 1):
        if len(pool) < 2 * p - 1:
            raise InvariantViolation(
                f"pool shrank to {len(pool)} before extraction (need {2 * p - 1})"
            )
        window = pool[: 2 * p - 1]
        local = solve_prime(p, [vals[t] for t in window], lemma_algorithm)
        chosen = [window[t] for t in local]
        x = sum(vals[t] for t in chosen)
        if x % p != 0:
            raise InvariantViolation(f"prime-case sum {x} not divisible by {p}")
        quotients.append(x // p)
        groups.append(chosen)
        taken = set(chosen)
        pool = [t for t in pool if t not in taken]
    sub = solve_general(a, quotients, lemma_algorithm)
    out: list[int] = []
    for gi in sub:
        out.extend(groups[gi])
    return sorted(out)
