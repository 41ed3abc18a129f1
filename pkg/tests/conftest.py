import math

import pytest

from apresidues.bigmod import OddPrimeContext
from apresidues.residues import build_small_field_table

P24 = 10**24 + 7
P128 = 2**128 + 51
P48 = 10**48 + 217

# verified in tests/test_scenarios.py: products multiply back to p-1 and every
# factor passes the primality test
P128_FACTORS = {2: 1, 3: 5, 17: 1, 89: 1, 6481: 1, 5816689: 1,
                12275703273579557140363: 1}
P48_FACTORS = {2: 3, 7: 1, 139449433: 1, 35855291: 1,
               3571428571428569285714285714287: 1}


def naive_is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


def naive_von_mangoldt(n: int) -> float:
    """Independent oracle: log q when trial factorization finds a single
    prime base, else 0."""
    if n < 2:
        return 0.0
    base = None
    m = n
    for d in range(2, math.isqrt(n) + 1):
        if m % d == 0:
            base = d
            while m % d == 0:
                m //= d
            break
    if base is None:
        return math.log(n)  # n itself prime
    return math.log(base) if m == 1 else 0.0


def euler_sign(n: int, p: int) -> int:
    """Quadratic symbol by one modular exponentiation (independent of jacobi)."""
    w = pow(n % p, (p - 1) // 2, p)
    return 1 if w == 1 else -1


@pytest.fixture(scope="session")
def table41():
    return build_small_field_table(41)


@pytest.fixture(scope="session")
def table101():
    return build_small_field_table(101)


@pytest.fixture(scope="session")
def table1009():
    return build_small_field_table(1009)


@pytest.fixture(scope="session")
def ctx24():
    return OddPrimeContext.for_prime(P24)


@pytest.fixture(scope="session")
def ctx41():
    return OddPrimeContext.for_prime(41, allow_small=False)
