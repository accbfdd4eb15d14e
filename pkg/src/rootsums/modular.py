"""Exact arithmetic in the prime field F_q for an odd prime q.

Scalar routines (kronecker, inv_mod, sqrt_mod, ...) use Python integers and
stay exact for any odd prime modulus below 2**62.  A PrimeField carries
cached residue tables (Legendre values, inverses, smallest square roots)
when the modulus is below a configurable threshold; the table-backed and
table-free paths are cross-checked against each other in the tests.

Everything here is pure; a PrimeField is immutable after construction and
safe to share between threads.
"""

from __future__ import annotations

import cmath
import math
from functools import lru_cache

import numpy as np

from .primes import is_prime

MAX_MODULUS = 1 << 62
DEFAULT_TABLE_LIMIT = 1 << 22

TWO_PI = 2.0 * math.pi


def kronecker(a: int, n: int) -> int:
    """Full Kronecker symbol (a/n); n must be nonzero.

    Agrees with the Jacobi symbol for odd n > 0 and with the Legendre symbol
    when n is an odd prime not dividing a.  The extension to even n is what
    lets the quadratic character of -q decide p = 2.
    """
    if n == 0:
        raise ValueError("Kronecker symbol (a/0) is not defined here")
    k = 1
    if n < 0:
        n = -n
        if a < 0:
            k = -k
    if n % 2 == 0:
        if a % 2 == 0:
            return 0
        e = 0
        while n % 2 == 0:
            n //= 2
            e += 1
        if e % 2 == 1 and a % 8 in (3, 5):
            k = -k
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                k = -k
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            k = -k
        a %= n
    return k if n == 1 else 0


def inv_mod(a: int, q: int) -> int:
    """Inverse of a modulo q, in [1, q-1].  Raises for a == 0 (mod q)."""
    a %= q
    if a == 0:
        raise ValueError("0 is not invertible")
    return pow(a, -1, q)


def eps_q(q: int) -> complex:
    """The quadratic-Gauss-sum normaliser: 1 for q = 1 (mod 4), i for q = 3 (mod 4)."""
    return 1.0 + 0.0j if q % 4 == 1 else 1.0j


def e_q(x: int, q: int) -> complex:
    """exp(2*pi*i*x/q), reducing x mod q first so large x never costs accuracy."""
    return cmath.exp(2j * math.pi * ((x % q) / q))


def reduced_residue(x: int, q: int) -> int:
    """Representative of x mod q in [1, q] (so 0 is represented by q)."""
    r = x % q
    return q if r == 0 else r


def tonelli_shanks(a: int, q: int) -> int | None:
    """One square root of a mod q, or None when a is a non-residue.

    Deterministic: the auxiliary non-residue is found by scanning 2, 3, 5, ...
    """
    a %= q
    if a == 0:
        return 0
    if kronecker(a, q) != 1:
        return None
    if q % 4 == 3:
        return pow(a, (q + 1) // 4, q)
    # q = 1 (mod 4): write q-1 = d * 2^s and walk the 2-Sylow subgroup.
    d = q - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    z = 2
    while kronecker(z, q) != -1:
        z += 1
    c = pow(z, d, q)
    x = pow(a, (d + 1) // 2, q)
    t = pow(a, d, q)
    m = s
    while t != 1:
        t2 = t
        i = 0
        while t2 != 1:
            t2 = t2 * t2 % q
            i += 1
        b = pow(c, 1 << (m - i - 1), q)
        x = x * b % q
        c = b * b % q
        t = t * c % q
        m = i
    return x


def sqrt_mod(a: int, q: int) -> tuple[int, ...]:
    """All x in F_q with x^2 = a (mod q), sorted.

    Returns (0,) for a = 0, a pair (r, q-r) for residues, () for non-residues.
    """
    a %= q
    if a == 0:
        return (0,)
    r = tonelli_shanks(a, q)
    if r is None:
        return ()
    return (r, q - r) if r < q - r else (q - r, r)


@lru_cache(maxsize=32)
def inverse_table(q: int) -> np.ndarray:
    """int64 array inv with inv[a]*a = 1 (mod q) for a in [1, q-1]; inv[0] = 0.

    Uses the batched square-and-multiply a^(q-2); all intermediate products
    stay below 2**62 because q < 2**31 is enforced.
    """
    if q >= 1 << 31:
        raise ValueError("inverse_table supports q < 2**31")
    result = np.ones(q, dtype=np.int64)
    base = np.arange(q, dtype=np.int64)
    e = q - 2
    while e:
        if e & 1:
            result = result * base % q
        base = base * base % q
        e >>= 1
    result[0] = 0
    result.flags.writeable = False
    return result


@lru_cache(maxsize=32)
def legendre_table(q: int) -> np.ndarray:
    """int8 array of Legendre symbols (a/q) for a in [0, q)."""
    if q >= 1 << 31:
        raise ValueError("legendre_table supports q < 2**31")
    table = np.full(q, -1, dtype=np.int8)
    x = np.arange((q + 1) // 2, dtype=np.int64)
    table[x * x % q] = 1
    table[0] = 0
    table.flags.writeable = False
    return table


@lru_cache(maxsize=32)
def root_table(q: int) -> np.ndarray:
    """int64 array mapping residue -> smallest square root, -1 for non-residues."""
    if q >= 1 << 31:
        raise ValueError("root_table supports q < 2**31")
    table = np.full(q, -1, dtype=np.int64)
    x = np.arange((q + 1) // 2, dtype=np.int64)[::-1]
    table[x * x % q] = x
    table.flags.writeable = False
    return table


class PrimeField:
    """An odd prime modulus with optional cached residue tables.

    Tables are built once at construction for q below ``table_limit`` and
    never mutated afterwards, so instances are safe for concurrent reads.
    Above the threshold every operation falls back to the scalar routines.
    """

    __slots__ = ("q", "legendre_map", "inverse_map", "root_map")

    def __init__(self, q: int, table_limit: int = DEFAULT_TABLE_LIMIT):
        if q % 2 == 0 or q >= MAX_MODULUS or not is_prime(q):
            raise ValueError(f"modulus must be an odd prime below 2**62, got {q}")
        self.q = q
        if q <= table_limit:
            self.legendre_map = legendre_table(q)
            self.inverse_map = inverse_table(q)
            self.root_map = root_table(q)
        else:
            self.legendre_map = None
            self.inverse_map = None
            self.root_map = None

    def __repr__(self) -> str:
        return f"PrimeField(q={self.q})"

    @property
    def has_tables(self) -> bool:
        return self.legendre_map is not None

    def legendre(self, a: int) -> int:
        a %= self.q
        if self.legendre_map is not None:
            return int(self.legendre_map[a])
        return kronecker(a, self.q)

    def inv(self, a: int) -> int:
        a %= self.q
        if a == 0:
            raise ValueError("0 is not invertible")
        if self.inverse_map is not None:
            return int(self.inverse_map[a])
        return pow(a, -1, self.q)

    def sqrts(self, a: int) -> tuple[int, ...]:
        """Sorted tuple of square roots of a, via table lookup when cached."""
        a %= self.q
        if a == 0:
            return (0,)
        if self.root_map is not None:
            r = int(self.root_map[a])
            if r < 0:
                return ()
            return (r, self.q - r) if r <= self.q - r else (self.q - r, r)
        return sqrt_mod(a, self.q)

    def eps(self) -> complex:
        return eps_q(self.q)

    def e(self, x: int) -> complex:
        return e_q(x, self.q)
