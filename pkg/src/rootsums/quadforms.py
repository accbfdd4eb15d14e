"""Binary quadratic forms of discriminant -q, class numbers, and the character chi = (-q/.).

For a prime q = 3 (mod 4) and q > 3 the discriminant -q is fundamental, the
reduced forms are enumerated directly, and the class number is cross-checked
against Dirichlet's formula h = sqrt(q) * L(1, chi) / pi with L evaluated as a
truncated series.  Heegner points of the reduced forms feed the box-fraction
statistic whose limit is 27/(10*pi).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .modular import kronecker
from .primes import divisors, factorize, is_prime, sieve_primes

DUKE_LIMIT_FRACTION = 27.0 / (10.0 * math.pi)


@dataclass(frozen=True)
class BinaryQuadraticForm:
    """Integer form A x^2 + B xy + C y^2."""

    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def is_positive_definite(self) -> bool:
        return self.discriminant < 0 and self.a > 0

    @property
    def is_reduced(self) -> bool:
        """gcd(A,B,C) = 1, |B| <= A <= C, and B >= 0 when |B| = A or A = C."""
        if math.gcd(math.gcd(self.a, self.b), self.c) != 1:
            return False
        if not (abs(self.b) <= self.a <= self.c):
            return False
        if (abs(self.b) == self.a or self.a == self.c) and self.b < 0:
            return False
        return True

    def heegner_point(self) -> complex:
        """z = (-B + i*sqrt(q)) / (2A) in the upper half-plane, q = -discriminant."""
        q = -self.discriminant
        return complex(-self.b / (2 * self.a), math.sqrt(q) / (2 * self.a))

    def value(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y


def _require_form_modulus(q: int) -> None:
    if q % 4 != 3 or q <= 3 or not is_prime(q):
        raise ValueError("need a prime q = 3 (mod 4) with q > 3")


@lru_cache(maxsize=256)
def enumerate_reduced_forms(q: int) -> tuple[BinaryQuadraticForm, ...]:
    """All reduced forms of discriminant -q, each class exactly once, sorted.

    Scans odd B with B^2 <= q/3 and factors (B^2 + q)/4 into A*C pairs; the
    sign tie-break keeps exactly one of (A, +/-B, C) when |B| = A or A = C.
    Primitivity is automatic because -q is squarefree.
    """
    _require_form_modulus(q)
    forms = []
    b_max = math.isqrt(q // 3)
    for b in range(1, b_max + 1, 2):
        m = (b * b + q) // 4
        for a in range(b, math.isqrt(m) + 1):
            if m % a:
                continue
            c = m // a
            forms.append(BinaryQuadraticForm(a, b, c))
            if b < a < c:
                forms.append(BinaryQuadraticForm(a, -b, c))
    forms.sort(key=lambda f: (f.a, f.b, f.c))
    return tuple(forms)


def class_number(q: int) -> int:
    """h(-q) by reduced-form enumeration."""
    return len(enumerate_reduced_forms(q))


def heegner_fraction(
    q: int,
    y_min: float = 1.0,
    y_max: float = 10.0,
) -> float:
    """Fraction of Heegner points inside the box |x| <= 1/2, y_min <= y <= y_max.

    For reduced forms the x coordinate -B/(2A) always lies in [-1/2, 1/2], so
    only the height sqrt(q)/(2A) is tested.
    """
    forms = enumerate_reduced_forms(q)
    hits = sum(1 for f in forms if y_min <= math.sqrt(q) / (2 * f.a) <= y_max)
    return hits / len(forms)


def forms_in_window(q: int, y_min: float = 1.0, y_max: float = 10.0) -> list[BinaryQuadraticForm]:
    """Reduced forms whose Heegner point falls in the standard box."""
    return [
        f
        for f in enumerate_reduced_forms(q)
        if y_min <= math.sqrt(q) / (2 * f.a) <= y_max
    ]


# ---------------------------------------------------------------------------
# The character chi(n) = kronecker(-q, n) and the representation function r(n).
# ---------------------------------------------------------------------------


def chi(n: int, q: int) -> int:
    """The quadratic character attached to -q, extended to all n via Kronecker."""
    return kronecker(-q, n)


@lru_cache(maxsize=64)
def _chi_period_table(q: int) -> np.ndarray:
    """chi on a full period: chi[r] for r in [0, q) when q = 3 (mod 4)."""
    table = np.array([0] + [kronecker(-q, r) for r in range(1, q)], dtype=np.int8)
    table.flags.writeable = False
    return table


@lru_cache(maxsize=16)
def _chi_odd_table(q: int) -> np.ndarray:
    """chi on odd residues mod 4q, for q = 1 (mod 4) where chi is not periodic mod q."""
    table = np.array([0] + [kronecker(-q, r) for r in range(1, 4 * q)], dtype=np.int8)
    table.flags.writeable = False
    return table


def chi_values(q: int, limit: int) -> np.ndarray:
    """int8 array of chi(n) for n = 0..limit.

    For q = 3 (mod 4), chi is periodic mod q.  Otherwise the odd part is
    periodic mod 4q and powers of 2 contribute chi(2)^v2(n).
    """
    n = np.arange(limit + 1, dtype=np.int64)
    if q % 4 == 3:
        return _chi_period_table(q)[n % q]
    low = n & (-n)
    low[0] = 1
    odd = n // low
    vals = _chi_odd_table(q)[odd % (4 * q)].astype(np.int8)
    chi2 = kronecker(-q, 2)
    if chi2 == -1:
        v2 = np.round(np.log2(low.astype(np.float64))).astype(np.int64)
        vals = np.where(v2 % 2 == 1, -vals, vals).astype(np.int8)
    out = vals
    out[0] = 0
    return out


def r_function(n: int, q: int) -> int:
    """r(n) = sum over d | n of chi(d), by direct divisor sum."""
    if n < 1:
        raise ValueError("r(n) needs n >= 1")
    return sum(chi(d, q) for d in divisors(n))


def representation_count(n: int, q: int) -> int:
    """R_{-q}(n) = 2 * r(n) via the Euler-product form over p^l || n.

    Independent of the divisor-sum path: each prime power contributes
    1 + chi(p) + ... + chi(p)^l.
    """
    if n < 1:
        raise ValueError("representation count needs n >= 1")
    total = 2
    for p, e in factorize(n).items():
        cp = chi(p, q)
        if cp == 1:
            total *= e + 1
        elif cp == -1:
            if e % 2 == 1:
                return 0
        # cp == 0 contributes the empty-power term only
    return total


def _sqrt_solvable_odd_prime_power(a: int, p: int, e: int) -> bool:
    """Is x^2 = a (mod p^e) solvable, p an odd prime?"""
    m = p**e
    a %= m
    if a == 0:
        return True
    v = 0
    while a % p == 0:
        a //= p
        v += 1
    if v >= e:
        return True
    return v % 2 == 0 and kronecker(a, p) == 1


def _sqrt_solvable_two_power(a: int, e: int) -> bool:
    """Is x^2 = a (mod 2^e) solvable?"""
    m = 1 << e
    a %= m
    if a == 0:
        return True
    v = 0
    while a % 2 == 0:
        a //= 2
        v += 1
    if v >= e:
        return True
    if v % 2 == 1:
        return False
    rem = e - v
    if rem == 1:
        return True
    if rem == 2:
        return a % 4 == 1
    return a % 8 == 1


def is_represented(n: int, q: int) -> bool:
    """True iff b^2 = -q (mod 4n) is solvable, decided prime power by prime power."""
    if n < 1:
        raise ValueError("need n >= 1")
    factors = factorize(4 * n)
    for p, e in factors.items():
        if p == 2:
            if not _sqrt_solvable_two_power(-q, e):
                return False
        elif not _sqrt_solvable_odd_prime_power(-q, p, e):
            return False
    return True


def r_mean_value(x: float, q: int) -> int:
    """Exact integer sum of r(n) for n <= x, via sum over d of chi(d) * floor(x/d)."""
    cutoff = math.floor(x)
    if cutoff < 1:
        return 0
    vals = chi_values(q, cutoff).astype(np.int64)
    d = np.arange(cutoff + 1, dtype=np.int64)
    d[0] = 1
    return int(np.sum(vals * (cutoff // d)))


def l_value_direct(q: int, truncation: int = 10**6) -> float:
    """Truncated series sum_{n <= T} chi(n)/n."""
    vals = chi_values(q, truncation).astype(np.float64)
    n = np.arange(truncation + 1, dtype=np.float64)
    n[0] = 1.0
    return float(np.sum(vals / n))


def l_value_exact(q: int) -> float:
    """pi * h(-q) / sqrt(q), from the class number formula (q = 3 mod 4, q > 3)."""
    return math.pi * class_number(q) / math.sqrt(q)


def l1_chi(q: int, truncation: int = 10**6) -> tuple[float, float]:
    """(direct, exact) values of L(1, chi); the exact side needs q = 3 (mod 4)."""
    return l_value_direct(q, truncation), l_value_exact(q)


# ---------------------------------------------------------------------------
# Sweeps.
# ---------------------------------------------------------------------------


def class_number_consistency_sweep(q_max: int = 10**4, truncation: int = 10**6) -> list[dict]:
    """Compare enumeration h against round(sqrt(q) * L_direct / pi) for q = 3 (mod 4)."""
    rows = []
    for q in sieve_primes(q_max):
        q = int(q)
        if q % 4 != 3 or q <= 3:
            continue
        h = class_number(q)
        direct = l_value_direct(q, truncation)
        implied = math.sqrt(q) * direct / math.pi
        rows.append(
            {
                "q": q,
                "h": h,
                "l_direct": direct,
                "h_implied": implied,
                "agrees": round(implied) == h,
            }
        )
    return rows


def r_mean_sweep(q_values: tuple[int, ...] = (1009, 5003, 10007), points: int = 8) -> list[dict]:
    """|sum_{n<=x} r(n) - L x| / x^0.9 over a geometric grid of x up to q."""
    rows = []
    for q in q_values:
        l_val = l_value_direct(q)
        x_lo = max(8, int(q ** (0.25 + 0.05)))
        for i in range(points):
            x = int(round(x_lo * (q / x_lo) ** (i / (points - 1)))) if points > 1 else q
            total = r_mean_value(x, q)
            dev = abs(total - l_val * x)
            rows.append(
                {
                    "q": q,
                    "x": x,
                    "mean": total,
                    "l_value": l_val,
                    "deviation": dev,
                    "ratio_power": dev / x**0.9,
                    "ratio_linear": dev / x,
                }
            )
    return rows
