import random

import pytest

from moncurve.errors import NonCoprime
from moncurve.semigroup import make_curve, parse_curve


@pytest.fixture
def ex1():
    return parse_curve("21:0,10,18,19,21")


@pytest.fixture
def ex2():
    return parse_curve("13:0,5,8,9,11,13")


@pytest.fixture
def ex3():
    return parse_curve("15:0,5,8,9,11,13,15")


def random_curve(rng: random.Random, dmax: int, *, dmin: int = 1, smooth: bool = False, max_mid: int = 6):
    """A valid curve with 0, d in G and coprime exponents."""
    while True:
        d = rng.randint(max(dmin, 2 if smooth else 1), dmax)
        k = rng.randint(0, min(d - 1, max_mid))
        mids = set(rng.sample(range(1, d), k)) if d > 1 else set()
        if smooth:
            mids |= {1, d - 1}
        try:
            return make_curve(d, mids | {0, d})
        except NonCoprime:
            continue
