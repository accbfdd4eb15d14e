"""Split primes in Q(sqrt(-q)), least (non-)residues, and the effective counting construction.

The quantitative centrepiece: for q = 3 (mod 16) the values of
P(n) = n^2 + n + (q+1)/4 satisfy 4*P(n) = (2n+1)^2 + q, so every odd prime
divisor p (with p != q) makes -q a nonzero square mod p and is therefore
split; P(n) is odd outright, so p = 2 never appears.  Counting the distinct
prime factors p <= q over n <= floor(sqrt(3q)/2) yields an effective lower
bound on the number of split primes below q.

Note the quadratic here carries the cross term n^2 + n + (q+1)/4, which is
what discriminant -q forces; the cross-term-free variant n^2 + (q+1)/4 has
discriminant -(q+1) and genuinely produces non-split factors (q = 67:
2 divides 1 + 17 = 18 yet -67 = 5 mod 8, so 2 is inert).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .modular import inv_mod, kronecker, sqrt_mod
from .primes import factorize, is_prime, iter_prime_blocks, sieve_primes, valuation

# (2 - log(3*sqrt(2))) / 2, the per-step constant in the effective lower bound
EFFECTIVE_CONSTANT = (2.0 - math.log(3.0 * math.sqrt(2.0))) / 2.0


def is_split(p: int, q: int) -> str:
    """Splitting type of the rational prime p in Q(sqrt(-q)): 'split', 'inert' or 'ramified'.

    Decided by the Kronecker symbol (-q/p); at p = 2 that convention reads
    split iff -q = 1 (mod 8), which matches the field for q = 3 (mod 4).
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == q:
        return "ramified"
    return "split" if kronecker(-q, p) == 1 else "inert"


def count_split(limit: float, q: int) -> int:
    """N_q(P): the number of split primes p <= P, by segmented enumeration."""
    n = int(limit)
    if n < 2:
        return 0
    total = 0
    for block in iter_prime_blocks(n):
        for p in block:
            p = int(p)
            if p != q and kronecker(-q, p) == 1:
                total += 1
    return total


def split_census(limit: float, q: int) -> dict[str, int]:
    """Counts of split / inert / ramified primes up to the limit."""
    n = int(limit)
    census = {"split": 0, "inert": 0, "ramified": 0}
    if n < 2:
        return census
    for block in iter_prime_blocks(n):
        for p in block:
            census[is_split(int(p), q)] += 1
    return census


def least_split_prime(q: int) -> int:
    """Smallest split prime."""
    for block in iter_prime_blocks(4 * q * q):
        for p in block:
            if is_split(int(p), q) == "split":
                return int(p)
    raise RuntimeError("no split prime found below 4q^2")


def least_nonresidue(q: int) -> int:
    """Smallest prime quadratic non-residue modulo q (prime by multiplicativity)."""
    for block in iter_prime_blocks(4 * q * q):
        for p in block:
            if kronecker(int(p), q) == -1:
                return int(p)
    raise RuntimeError("no non-residue found below 4q^2")


def principal_form_value(n: int, q: int) -> int:
    """P(n) = n^2 + n + (q+1)/4, so that 4*P(n) = (2n+1)^2 + q."""
    if q % 16 != 3:
        raise ValueError("need q = 3 (mod 16)")
    if n < 1:
        raise ValueError("need n >= 1")
    return n * n + n + (q + 1) // 4


def construction_range(q: int) -> int:
    """t = floor(sqrt(3q)/2), the number of form values entering the product."""
    return math.isqrt(3 * q) // 2


@dataclass(frozen=True)
class EffectiveCountReport:
    q: int
    t: int
    split_primes: tuple[int, ...]
    omega: int
    excluded_above_q: tuple[int, ...]
    bound: float
    passed: bool


def effective_split_count(q: int) -> EffectiveCountReport:
    """Factor P(1..t), verify every prime factor is split, and compare omega to the bound.

    Any prime factor failing the splitting test is a hard error, since that
    would falsify the construction itself.  Factors above q exist only near
    n = t; they are split too but are excluded from omega so that
    omega <= N_q(q) stays valid.
    """
    if q < 67 or not is_prime(q) or q % 16 != 3:
        raise ValueError("need a prime q >= 67 with q = 3 (mod 16)")
    t = construction_range(q)
    p_max = principal_form_value(t, q)
    base = sieve_primes(math.isqrt(p_max) + 1)
    collected: set[int] = set()
    excluded: set[int] = set()
    for n in range(1, t + 1):
        value = principal_form_value(n, q)
        for p in factorize(value, base):
            if is_split(p, q) != "split":
                raise AssertionError(
                    f"prime {p} divides P({n}) for q={q} but is not split"
                )
            if p <= q:
                collected.add(p)
            else:
                excluded.add(p)
    bound = EFFECTIVE_CONSTANT * t / math.log(q)
    omega = len(collected)
    return EffectiveCountReport(
        q=q,
        t=t,
        split_primes=tuple(sorted(collected)),
        omega=omega,
        excluded_above_q=tuple(sorted(excluded)),
        bound=bound,
        passed=omega > bound,
    )


def effective_sweep(q_min: int = 67, q_max: int = 10**4) -> list[EffectiveCountReport]:
    """Run the effective construction for every prime q = 3 (mod 16) in [q_min, q_max]."""
    reports = []
    for q in sieve_primes(q_max):
        q = int(q)
        if q >= q_min and q % 16 == 3:
            reports.append(effective_split_count(q))
    return reports


# ---------------------------------------------------------------------------
# Hensel lifting and the valuation identity for the form values.
# ---------------------------------------------------------------------------


def hensel_sqrt(a: int, p: int, k: int) -> tuple[int, int]:
    """The two lifts {x, p^k - x} of the square roots of a modulo p^k.

    Needs p odd, p not dividing a, and a a quadratic residue mod p; precision
    doubles each Newton step x -> (x + a/x) / 2.
    """
    if k < 1:
        raise ValueError("need k >= 1")
    if p % 2 == 0 or not is_prime(p):
        raise ValueError("p must be an odd prime")
    if a % p == 0:
        raise ValueError("a must be a unit mod p")
    roots = sqrt_mod(a % p, p)
    if not roots:
        raise ValueError(f"{a} is not a quadratic residue mod {p}")
    x = roots[0]
    modulus = p
    target = p**k
    while modulus < target:
        modulus = min(modulus * modulus, target)
        x = (x + a * inv_mod(x, modulus)) * inv_mod(2, modulus) % modulus
    x %= target
    return tuple(sorted((x, target - x)))


def _lift_form_roots(q: int, p: int, k: int) -> tuple[int, int]:
    """Roots of X^2 + X + (q+1)/4 modulo p^k, lifted from the simple roots mod p."""
    c = (q + 1) // 4
    disc_roots = sqrt_mod((-q) % p, p)
    if not disc_roots:
        raise ValueError(f"-{q} is not a square mod {p}; {p} is not split")
    target = p**k
    lifted = []
    for r in disc_roots:
        x = (r - 1) * inv_mod(2, p) % p
        modulus = p
        while modulus < target:
            modulus = min(modulus * modulus, target)
            fx = (x * x + x + c) % modulus
            dfx = (2 * x + 1) % modulus
            x = (x - fx * inv_mod(dfx, modulus)) % modulus
        lifted.append(x % target)
    a, b = sorted(lifted)
    return a, b


def ordp_identity_check(p: int, q: int, n: int) -> bool:
    """Check ord_p P(n) = ord_p(n - a_p) + ord_p(n - b_p) with truncated lifts.

    The lift precision p^k is pushed above 4q so every valuation that can
    occur in P(n) <= q + O(sqrt(q)) is resolved exactly; with that precision
    the identity holds for all n <= t, including n equal to a truncated root.
    """
    if q % 16 != 3:
        raise ValueError("need q = 3 (mod 16)")
    if p == 2 or not is_prime(p):
        raise ValueError("p must be an odd prime")
    value = principal_form_value(n, q)
    k = 1
    while p**k <= 4 * q:
        k += 1
    a_p, b_p = _lift_form_roots(q, p, k)
    lhs = valuation(value, p)
    if n == a_p or n == b_p:
        # cannot happen at this precision: it would force p^k | P(n) <= 4q < p^k
        raise AssertionError("truncated root collision at certified precision")
    rhs = valuation(n - a_p, p) + valuation(n - b_p, p)
    return lhs == rhs


def stirling_step_holds(t: int) -> bool:
    """Exact check of (t-1)! <= (t/e)^t via log-gamma with a safety margin."""
    if t <= 7:
        raise ValueError("the step is only claimed for t > 7")
    lhs = math.lgamma(t)  # log((t-1)!)
    rhs = t * (math.log(t) - 1.0)
    return lhs <= rhs + 1e-9


def asymptotic_probe_rows(
    q_min: int = 10**3, q_max: int = 10**5, exponent_eps: float = 0.25, stride: int = 40
) -> list[dict]:
    """Report-only probe of the asymptotic lower bound N_q(P) >= c * min(...).

    The constant is ineffective, so rows carry the measured ratio without any
    assertion.  ``stride`` thins the prime grid to keep the probe quick.
    """
    rows = []
    primes = sieve_primes(q_max)
    primes = primes[primes >= q_min]
    for q in primes[::stride]:
        q = int(q)
        p_limit = q ** (0.5 + exponent_eps)
        measured = count_split(p_limit, q)
        envelope = min(
            p_limit**0.5 * q ** (-exponent_eps / 2.0),
            p_limit * q ** (-0.25 - 2.0 * exponent_eps / 3.0),
        )
        rows.append(
            {
                "q": q,
                "P": p_limit,
                "split_count": measured,
                "envelope": envelope,
                "ratio": measured / envelope if envelope > 0 else math.inf,
            }
        )
    return rows
