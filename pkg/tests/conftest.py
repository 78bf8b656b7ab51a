import random

import pytest

from nacirc.ffield import DEFAULT_MODULUS


@pytest.fixture
def p():
    return DEFAULT_MODULUS


def random_tree(rng, deg, n):
    if deg == 1:
        return rng.randrange(1, n + 1)
    split = rng.randrange(1, deg)
    return (random_tree(rng, split, n), random_tree(rng, deg - split, n))


def all_trees(deg, n):
    if deg == 1:
        return list(range(1, n + 1))
    out = []
    for split in range(1, deg):
        for left in all_trees(split, n):
            for right in all_trees(deg - split, n):
                out.append((left, right))
    return out


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
