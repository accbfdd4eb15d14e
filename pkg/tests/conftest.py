import numpy as np
import pytest

from rootsums.primes import sieve_primes


@pytest.fixture(scope="session")
def odd_primes_200():
    return [int(q) for q in sieve_primes(200) if q % 2 == 1]


@pytest.fixture(scope="session")
def odd_primes_1000():
    return [int(q) for q in sieve_primes(1000) if q % 2 == 1]


@pytest.fixture
def rng():
    return np.random.default_rng(2026)
