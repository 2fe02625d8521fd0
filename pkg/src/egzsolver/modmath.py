"""Modular and integer number-theoretic primitives shared by all solver modules.

Everything here is pure and allocation-light; the tables it produces are
immutable after construction and safe to share between solves.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError

__all__ = [
    "InverseTable",
    "batch_inverses",
    "ext_gcd",
    "smallest_prime_factor",
    "is_prime",
    "next_prime",
    "iroot",
    "counting_sort_permutation",
]


@dataclass(frozen=True)
class InverseTable:
    """All multiplicative inverses modulo a prime.

    ``inv[i] * i == 1 (mod n)`` for every i in [1, n-1]; ``inv[0]`` is an
    unused sentinel.
    """

    n: int
    inv: list[int]

    def __getitem__(self, i: int) -> int:
        return self.inv[i]


def batch_inverses(n: int) -> InverseTable:
    """Compute every inverse mod the prime n in O(n) total.

    Uses the recurrence inv[i] = -(n // i) * inv[n % i] mod n, which needs
    only the previously computed entry for the smaller remainder n % i.
    Primality of n is the caller's responsibility.
    """
    if n < 2:
        raise InputError(f"modulus must be at least 2, got {n}")
    inv = [0] * n
    if n >= 2:
        inv[1] = 1
    for i in range(2, n):
        inv[i] = (-(n // i) * inv[n % i]) % n
    return InverseTable(n, inv)


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y == g == gcd(a, b), exactly in integers."""
    if a == 0 and b == 0:
        raise InputError("gcd(0, 0) is undefined")
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    return old_r, old_x, old_y


def smallest_prime_factor(n: int) -> int:
    """Smallest prime dividing n, by trial division up to sqrt(n)."""
    if n < 2:
        raise InputError(f"need n >= 2, got {n}")
    if n % 2 == 0:
        return 2
    if n % 3 == 0:
        return 3
    f = 5
    while f * f <= n:
        if n % f == 0:
            return f
        if n % (f + 2) == 0:
            return f + 2
        f += 6
    return n


def is_prime(n: int) -> bool:
    return n >= 2 and smallest_prime_factor(n) == n


def next_prime(n: int) -> int:
    """Least prime >= n."""
    c = max(n, 2)
    while not is_prime(c):
        c += 1
    return c


def iroot(x: int, r: int) -> int:
    """Integer floor of the r-th root of x >= 0 (Newton iteration)."""
    if x < 0 or r < 1:
        raise InputError(f"iroot requires x >= 0 and r >= 1, got ({x}, {r})")
    if x < 2 or r == 1:
        return x
    guess = 1 << ((x.bit_length() + r - 1) // r)
    while True:
        nxt = ((r - 1) * guess + x // guess ** (r - 1)) // r
        if nxt >= guess:
            break
        guess = nxt
    while guess ** r > x:
        guess -= 1
    return guess


def counting_sort_permutation(values, bound: int) -> list[int]:
    """Stable permutation of indices sorting ``values`` non-decreasingly.

    Every value must lie in [0, bound); runs in O(len + bound).
    """
    counts = [0] * (bound + 1)
    for pos, v in enumerate(values):
        if not 0 <= v < bound:
            raise InputError(f"value {v} at index {pos} outside [0, {bound})")
        counts[v + 1] += 1
    for v in range(bound):
        counts[v + 1] += counts[v]
    perm = [0] * len(values)
    for pos, v in enumerate(values):
        perm[counts[v]] = pos
        counts[v] += 1
    return perm
