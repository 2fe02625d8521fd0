import random

import pytest

from egzsolver.egz import solve_general, solve_prime
from egzsolver.errors import InputError
from egzsolver.oracle import egz_brute


def check_egz(n, values, indices):
    assert len(indices) == n
    assert len(set(indices)) == n
    assert all(0 <= i < len(values) for i in indices)
    assert sum(values[i] for i in indices) % n == 0


def test_prime_two_values():
    vals = [1, 1, 0]
    idx = solve_prime(2, vals)
    check_egz(2, vals, idx)
    assert sorted(vals[i] for i in idx) == [1, 1]


def test_prime_equal_run_shortcut():
    vals = [0, 0, 0, 1, 2]
    idx = solve_prime(3, vals)
    check_egz(3, vals, idx)
    assert [vals[i] for i in idx] == [0, 0, 0]


def test_prime_random():
    rng = random.Random(17)
    for _ in range(200):
        vals = [rng.randrange(0, 5) for _ in range(9)]
        check_egz(5, vals, solve_prime(5, vals))


def test_prime_rejects_wrong_count():
    with pytest.raises(InputError):
        solve_prime(3, [1, 2, 3])


def test_general_single():
    assert solve_general(1, [5]) == [0]


def test_general_small_composites():
    rng = random.Random(19)
    for n in (4, 6, 8, 9, 10, 12):
        for _ in range(100):
            vals = [rng.randrange(0, n) for _ in range(2 * n - 1)]
            idx = solve_general(n, vals)
            check_egz(n, vals, idx)
            w = egz_brute(n, vals) if n <= 12 else None
            if w is not None:
                check_egz(n, vals, w)


def test_general_values_reduced_per_level():
    vals = [37, -5, 100, 11, 12, 13, 14]
    idx = solve_general(4, vals)
    assert len(idx) == 4 == len(set(idx))
    assert sum(vals[i] for i in idx) % 4 == 0


def test_general_range_of_sizes():
    rng = random.Random(23)
    for n in list(range(2, 31)) + [37, 41, 53, 101]:
        for _ in range(10):
            vals = [rng.randrange(0, n) for _ in range(2 * n - 1)]
            check_egz(n, vals, solve_general(n, vals))
