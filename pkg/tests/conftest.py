import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from kgonal.chain import ChainOfCycles, k_gonal_chain

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")


@pytest.fixture
def g5():
    return k_gonal_chain(5, 3)


def random_chain(rng, g_max=6, mus=(0, 0, 2, 3, 4)):
    g = rng.randint(1, g_max)
    return ChainOfCycles.from_profile([rng.choice(mus) for _ in range(g)])


def random_rational(rng, span=6, dens=(1, 1, 2, 3, 5)):
    den = rng.choice(dens)
    return Fraction(rng.randint(-span * den, span * den), den)


@pytest.fixture
def rng():
    return random.Random(20240611)
