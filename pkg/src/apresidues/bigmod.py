"""Arbitrary-precision modular arithmetic and prime machinery.

Primality is deterministic below 3.3e14 (fixed Miller-Rabin witness set) and
a Baillie-PSW-class test above: no counterexample exists below 2**64 and none
is known above, which we document as desk-scale deterministic.  Full proving
is out of scope.

All logarithms are natural.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError, ResourceError

# first seven prime bases are deterministic witnesses for n < 3.4e14
_MR_DETERMINISTIC_BOUND = 330_000_000_000_000
_MR_BASES = (2, 3, 5, 7, 11, 13, 17)
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)

_SIEVE_LIMIT = 10**9
_SEGMENT = 1 << 21


def mod_pow(base: int, exponent: int, modulus: int) -> int:
    """base**exponent mod modulus, in [0, modulus)."""
    if modulus < 2:
        raise DomainError(f"modulus must be >= 2, got {modulus}")
    if exponent < 0:
        raise DomainError(f"exponent must be >= 0, got {exponent}")
    return pow(base, exponent, modulus)


def jacobi(n: int, m: int) -> int:
    """Jacobi symbol (n|m) for odd m >= 3; equals the Legendre symbol for prime m."""
    if m < 3 or m % 2 == 0:
        raise DomainError(f"Jacobi symbol needs an odd modulus >= 3, got {m}")
    n %= m
    result = 1
    while n != 0:
        while n % 2 == 0:
            n //= 2
            if m % 8 in (3, 5):
                result = -result
        n, m = m, n
        if n % 4 == 3 and m % 4 == 3:
            result = -result
        n %= m
    return result if m == 1 else 0


def _miller_rabin_witness(n: int, a: int, d: int, s: int) -> bool:
    """True if a witnesses the compositeness of n (n-1 = d * 2**s, d odd)."""
    a %= n
    if a == 0:
        return False
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def _lucas_strong_prp(n: int) -> bool:
    """Strong Lucas probable prime test with Selfridge's parameter choice."""
    d = 5
    while True:
        j = jacobi(d, n)
        if j == 0:
            return abs(d) == n
        if j == -1:
            break
        d = -(d + 2) if d > 0 else -(d - 2)
        if abs(d) > 100:
            r = math.isqrt(n)
            if r * r == n:
                return False
    q = (1 - d) // 4

    # n+1 = t * 2**s with t odd
    t = n + 1
    s = 0
    while t % 2 == 0:
        t //= 2
        s += 1

    # binary ladder for U_t, V_t mod n (P = 1)
    u, v, qk = 1, 1, q
    for bit in bin(t)[3:]:
        u = u * v % n
        v = (v * v - 2 * qk) % n
        qk = qk * qk % n
        if bit == "1":
            u, v = (u + v) % n, (v + d * u) % n
            if u % 2:
                u += n
            if v % 2:
                v += n
            u = (u // 2) % n
            v = (v // 2) % n
            qk = qk * q % n
    if u == 0 or v == 0:
        return True
    for _ in range(s - 1):
        v = (v * v - 2 * qk) % n
        if v == 0:
            return True
        qk = qk * qk % n
    return False


def is_prime(n: int) -> bool:
    """Primality test; deterministic below 3.3e14, Baillie-PSW class above."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < _MR_DETERMINISTIC_BOUND:
        return not any(_miller_rabin_witness(n, a, d, s) for a in _MR_BASES)
    if _miller_rabin_witness(n, 2, d, s):
        return False
    return _lucas_strong_prp(n)


def next_prime(n: int) -> int:
    """Least prime strictly greater than n."""
    m = n + 1
    if m <= 2:
        return 2
    if m % 2 == 0:
        m += 1
    while not is_prime(m):
        m += 2
    return m


def _simple_sieve(limit: int) -> np.ndarray:
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for q in range(2, math.isqrt(limit) + 1):
        if mask[q]:
            mask[q * q :: q] = False
    return mask


def prime_mask(x: int) -> np.ndarray:
    """Boolean array of length x+1 with mask[n] = n is prime."""
    if x > _SIEVE_LIMIT:
        raise ResourceError(f"sieve budget is {_SIEVE_LIMIT}, got {x}")
    if x < 1:
        return np.zeros(max(x + 1, 1), dtype=bool)
    return _simple_sieve(x)


def primes_up_to(x: int) -> np.ndarray:
    """All primes <= x, ascending (segmented sieve, budget 1e9)."""
    if x > _SIEVE_LIMIT:
        raise ResourceError(f"sieve budget is {_SIEVE_LIMIT}, got {x}")
    if x < 2:
        return np.array([], dtype=np.int64)
    if x <= _SEGMENT:
        return np.flatnonzero(_simple_sieve(x)).astype(np.int64)
    base = np.flatnonzero(_simple_sieve(math.isqrt(x) + 1)).astype(np.int64)
    chunks = [base[base <= x]]
    lo = int(base[-1]) + 1
    while lo <= x:
        hi = min(lo + _SEGMENT, x + 1)
        mask = np.ones(hi - lo, dtype=bool)
        for q in base:
            q = int(q)
            start = max(q * q, (lo + q - 1) // q * q)
            if start < hi:
                mask[start - lo :: q] = False
        chunks.append((np.flatnonzero(mask) + lo).astype(np.int64))
        lo = hi
    return np.concatenate(chunks)


def _iroot(n: int, k: int) -> int:
    """Floor of the k-th root of n >= 0."""
    if n < 0 or k < 1:
        raise DomainError(f"iroot needs n >= 0, k >= 1, got {n}, {k}")
    if k == 1 or n < 2:
        return n
    if k == 2:
        return math.isqrt(n)
    r = int(round(n ** (1.0 / k)))
    while r > 0 and r**k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


def von_mangoldt(n: int) -> float:
    """log q if n = q**j for a prime q, else 0.0; exact prime-power detection."""
    if n < 1:
        raise DomainError(f"von_mangoldt needs n >= 1, got {n}")
    if n == 1:
        return 0.0
    for d in _SMALL_PRIMES:
        if n % d == 0:
            m = n
            while m % d == 0:
                m //= d
            return math.log(d) if m == 1 else 0.0
    if is_prime(n):
        return math.log(n)
    # no prime factor <= 47 remains, so any power q**j has q >= 53
    j = 2
    while 53**j <= n:
        r = _iroot(n, j)
        if r**j == n and is_prime(r):
            return math.log(r)
        j += 1
    return 0.0


def factorize(n: int) -> dict[int, int]:
    """Prime factorisation by trial division (intended for n <= 1e9 scale)."""
    if n < 1:
        raise DomainError(f"factorize needs n >= 1, got {n}")
    out: dict[int, int] = {}
    for q in (2, 3):
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
    q = 5
    step = 2
    while q * q <= n:
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
        q += step
        step = 6 - step
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@lru_cache(maxsize=4096)
def euler_totient(q: int) -> int:
    """Count of integers in [1, q] coprime to q."""
    if q < 1:
        raise DomainError(f"euler_totient needs q >= 1, got {q}")
    result = q
    for f in factorize(q):
        result = result // f * (f - 1)
    return result


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    ds = [1]
    for q, e in factorize(n).items():
        ds = [d * q**i for d in ds for i in range(e + 1)]
    return sorted(ds)


def multiplicative_order(u: int, p: int, p_minus_1_factors) -> int:
    """Least t > 0 with u**t = 1 mod p, given the prime factors of p-1.

    Accepts a {prime: exponent} dict, a list of primes, or (prime, exponent)
    pairs; only the distinct primes matter.
    """
    if math.gcd(u, p) != 1:
        raise DomainError(f"gcd({u}, {p}) != 1")
    if isinstance(p_minus_1_factors, dict):
        factors = list(p_minus_1_factors)
    else:
        factors = [f[0] if isinstance(f, (tuple, list)) else f for f in p_minus_1_factors]
    check = p - 1
    for q in factors:
        while check % q == 0:
            check //= q
    if check != 1:
        raise DomainError("incomplete factorization of p-1")
    t = p - 1
    for q in factors:
        while t % q == 0 and pow(u, t // q, p) == 1:
            t //= q
    return t


@dataclass(frozen=True)
class OddPrimeContext:
    """A validated odd prime with its cached logarithms.

    bound_x(e) = log(p) * log(log(p))**e is the search radius every headline
    computation is measured against; it is monotone increasing in e because
    loglog_p > 1 for p >= 17 (the only regime allowed outside test mode).
    """

    p: int
    log_p: float
    loglog_p: float

    @classmethod
    def for_prime(cls, p: int, allow_small: bool = False) -> "OddPrimeContext":
        if p < 3 or p % 2 == 0 or not is_prime(p):
            raise DomainError(f"{p} is not an odd prime")
        if p < 17 and not allow_small:
            raise DomainError(f"p={p} < 17 needs allow_small=True (test/oracle mode)")
        log_p = math.log(p)
        return cls(p=p, log_p=log_p, loglog_p=math.log(log_p))

    def bound_x(self, e: float) -> float:
        return self.log_p * self.loglog_p**e


@dataclass(frozen=True)
class ResidueClass:
    """The arithmetic progression a + q*m; requires gcd(a, q) = 1.

    (a=0, q=1) is the trivial class containing every integer.
    """

    a: int
    q: int

    def __post_init__(self):
        if self.q < 1:
            raise DomainError(f"q must be >= 1, got {self.q}")
        if self.q == 1:
            if self.a != 0:
                raise DomainError("the trivial class q=1 requires a=0")
            return
        if not 1 <= self.a < self.q:
            raise DomainError(f"need 1 <= a < q, got a={self.a}, q={self.q}")
        if math.gcd(self.a, self.q) != 1:
            raise DomainError(f"gcd({self.a}, {self.q}) != 1")

    def contains(self, n: int) -> bool:
        return n % self.q == self.a
