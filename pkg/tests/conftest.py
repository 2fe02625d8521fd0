import random

import pytest

PRIMES_TO_61 = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61]


def random_lemma_values(p, seed, tag="vals"):
    rng = random.Random(f"{tag}:{p}:{seed}")
    return [rng.randrange(1, p) for _ in range(p - 1)]


@pytest.fixture
def rng():
    return random.Random(0xE62)
