import itertools
import random

import pytest

from egzsolver.errors import Infeasible, InputError
from egzsolver.oracle import brute_sumset, dp_subset_solve, egz_brute


def test_dp_known_witnesses():
    idx = dp_subset_solve(5, [1, 1, 1, 1], 2)
    assert len(idx) == 2 and all(i in range(4) for i in idx)
    vals = [3, 3, 5, 5, 5, 6]
    idx = dp_subset_solve(7, vals, 1)
    assert sum(vals[i] for i in idx) % 7 == 1
    assert len(set(idx)) == len(idx)
    with pytest.raises(Infeasible):
        dp_subset_solve(7, [2], 3)


def test_dp_target_zero_is_empty():
    assert dp_subset_solve(11, [1, 2, 3], 0) == []


def test_dp_agrees_with_exhaustive_enumeration():
    rng = random.Random(77)
    for p in (2, 3, 5, 7, 11, 13):
        for _ in range(20):
            vals = [rng.randrange(0, p) for _ in range(p - 1)]
            reachable = set()
            for r in range(len(vals) + 1):
                for comb in itertools.combinations(range(len(vals)), r):
                    reachable.add(sum(vals[i] for i in comb) % p)
            for t in range(p):
                if t in reachable:
                    idx = dp_subset_solve(p, vals, t)
                    assert sum(vals[i] for i in idx) % p == t
                    assert len(set(idx)) == len(idx)
                else:
                    with pytest.raises(Infeasible):
                        dp_subset_solve(p, vals, t)


def test_dp_never_infeasible_in_lemma_regime():
    rng = random.Random(78)
    for p in (5, 7, 11, 13, 17):
        for _ in range(10):
            vals = [rng.randrange(1, p) for _ in range(p - 1)]
            for t in range(p):
                dp_subset_solve(p, vals, t)


def test_brute_sumset_known_values():
    assert brute_sumset([(2, 3), (3, 2)], 7) == set(range(7))
    assert brute_sumset([(1, 4)], 9) == {0, 1, 2, 3, 4}
    assert brute_sumset([], 5) == {0}
    with pytest.raises(InputError):
        brute_sumset([(1, 20_000)], 30_000)


def test_brute_sumset_matches_direct_product():
    rng = random.Random(9)
    for _ in range(30):
        n = rng.randrange(3, 40)
        aps = [(rng.randrange(1, n), rng.randrange(0, 6)) for _ in range(3)]
        expect = {0}
        for a, k in aps:
            expect = {(x + t * a) % n for x in expect for t in range(k + 1)}
        assert brute_sumset(aps, n) == expect


def test_egz_brute_known_values():
    vals = [0, 1, 2]
    idx = egz_brute(2, vals)
    assert sorted(vals[i] for i in idx) == [0, 2]
    assert egz_brute(1, [7]) == [0]
    vals = [1, 1, 1, 2, 2]
    idx = egz_brute(3, vals)
    assert [vals[i] for i in idx] == [1, 1, 1]
    with pytest.raises(InputError):
        egz_brute(13, [0] * 25)


def test_egz_brute_never_fails_seeded():
    rng = random.Random(4242)
    for trial in range(10_000):
        n = trial % 10 + 1
        vals = [rng.randrange(0, n) for _ in range(2 * n - 1)]
        idx = egz_brute(n, vals)
        assert len(idx) == n == len(set(idx))
        assert sum(vals[i] for i in idx) % n == 0
