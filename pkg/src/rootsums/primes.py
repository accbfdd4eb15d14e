"""Prime generation, deterministic primality testing and trial-division factoring."""

from __future__ import annotations

import math
from typing import Iterator

import numpy as np

# Witness set that makes Miller-Rabin deterministic for n < 3.3 * 10**24,
# which comfortably covers the 2**62 modulus ceiling used elsewhere.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test for n < 3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def sieve_primes(limit: int) -> np.ndarray:
    """All primes <= limit as an int64 array (empty array for limit < 2)."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.nonzero(mask)[0].astype(np.int64)


def iter_prime_blocks(limit: int, block: int = 1 << 20) -> Iterator[np.ndarray]:
    """Yield primes <= limit in consecutive segments.

    A classic segmented sieve: base primes up to sqrt(limit) are sieved once,
    then each window [lo, hi) is cleared against them.  Memory stays O(block)
    regardless of limit.
    """
    if limit < 2:
        return
    base = sieve_primes(math.isqrt(limit))
    yield base[base <= limit]
    lo = math.isqrt(limit) + 1
    while lo <= limit:
        hi = min(lo + block, limit + 1)
        mask = np.ones(hi - lo, dtype=bool)
        for p in base:
            start = (-lo) % p
            mask[start :: p] = False
        yield (np.nonzero(mask)[0] + lo).astype(np.int64)
        lo = hi


def primes_between(lo: int, hi: int) -> np.ndarray:
    """Primes in [lo, hi] via one sieved segment."""
    if hi < 2 or hi < lo:
        return np.empty(0, dtype=np.int64)
    lo = max(lo, 2)
    base = sieve_primes(math.isqrt(hi))
    mask = np.ones(hi - lo + 1, dtype=bool)
    for p in base:
        start = max(p * p, ((lo + p - 1) // p) * p)
        if start <= hi:
            mask[start - lo :: p] = False
    if lo <= 1:
        mask[: 2 - lo] = False
    out = np.nonzero(mask)[0] + lo
    return out[out >= 2].astype(np.int64)


def factorize(n: int, base_primes: np.ndarray | None = None) -> dict[int, int]:
    """Factor n by trial division; returns {prime: exponent}.

    ``base_primes`` may carry a precomputed prime list covering sqrt(n);
    anything left after dividing out those primes is prime itself.
    """
    if n < 1:
        raise ValueError("factorize expects n >= 1")
    factors: dict[int, int] = {}
    if n == 1:
        return factors
    if base_primes is None:
        base_primes = sieve_primes(math.isqrt(n))
    for p in base_primes:
        p = int(p)
        if p * p > n:
            break
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def divisors(n: int) -> list[int]:
    """Sorted list of the positive divisors of n."""
    ds = [1]
    for p, e in factorize(n).items():
        ds = [d * p**k for d in ds for k in range(e + 1)]
    return sorted(ds)


def valuation(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0 is undefined")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v
