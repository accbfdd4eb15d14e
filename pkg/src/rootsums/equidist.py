"""Exact extreme discrepancy, the Erdos-Turan bound, and root-of-prime sequences.

Discrepancy here is the unnormalised supremum over half-open intervals
[alpha, beta) of |count - (beta - alpha) * N| for a multiset of points in
[0, 1).  The production algorithm is the sorted sweep
D = N * (D_plus + D_minus); its ground truth is an O(C^2) oracle that
evaluates the count deviation on every pair of critical endpoints (point
values and their left limits, realised with strict/non-strict counting).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SizeGuardError
from .expsums import sqrt_phase_table
from .modular import legendre_table
from .primes import sieve_primes
from .reports import slack_factor


@dataclass(frozen=True)
class PointMultiset:
    """Sorted points in [0, 1), duplicates allowed."""

    points: np.ndarray

    @classmethod
    def from_values(cls, values) -> "PointMultiset":
        arr = np.sort(np.asarray(values, dtype=np.float64))
        if arr.size and (arr[0] < 0.0 or arr[-1] >= 1.0):
            raise ValueError("points must lie in [0, 1)")
        arr.flags.writeable = False
        return cls(arr)

    @property
    def size(self) -> int:
        return int(self.points.size)


@dataclass(frozen=True)
class DiscrepancyReport:
    """Exact discrepancy with a witnessing interval and optional envelope data."""

    n_points: int
    value: float
    witness: tuple[float, float]
    envelope: float | None = None
    slack_exponent: float = 0.0

    @property
    def ratio(self) -> float | None:
        if self.envelope is None:
            return None
        return self.value / self.envelope if self.envelope else math.inf


def _as_sorted(points) -> np.ndarray:
    if isinstance(points, PointMultiset):
        return points.points
    return np.sort(np.asarray(points, dtype=np.float64))


def discrepancy(points) -> DiscrepancyReport:
    """Extreme discrepancy via the sorted sweep D = N * (D_plus + D_minus).

    The witness endpoints are the argmax locations of the two one-sided
    deviations; the right endpoint is approached as a left limit when the
    supremum is not attained.
    """
    xs = _as_sorted(points)
    n = xs.size
    if n == 0:
        return DiscrepancyReport(0, 0.0, (0.0, 0.0))
    i = np.arange(1, n + 1, dtype=np.float64)
    plus = i / n - xs
    minus = xs - (i - 1) / n
    d_plus = max(float(plus.max()), 0.0)
    d_minus = max(float(minus.max()), 0.0)
    beta = float(xs[int(np.argmax(plus))]) if d_plus > 0 else 1.0
    alpha = float(xs[int(np.argmax(minus))]) if d_minus > 0 else 0.0
    lo, hi = (alpha, beta) if alpha <= beta else (beta, alpha)
    return DiscrepancyReport(n, n * (d_plus + d_minus), (lo, hi))


def discrepancy_oracle(points) -> float:
    """Ground-truth discrepancy from all pairs of critical endpoints.

    Candidates are (t, count strictly below t) and (t, count up to t) for
    every point value t, plus the interval ends; the second kind realises the
    left-limit endpoints exactly.  O(C^2) in the number of candidates.
    """
    xs = _as_sorted(points)
    n = xs.size
    if n == 0:
        return 0.0
    if n > 5000:
        raise SizeGuardError("oracle restricted to modest multisets")
    values = np.unique(xs)
    below = np.searchsorted(xs, values, side="left").astype(np.float64)
    upto = np.searchsorted(xs, values, side="right").astype(np.float64)
    t = np.concatenate(([0.0, 1.0], values, values))
    c = np.concatenate(([0.0, float(n)], below, upto))
    dev = c - n * t
    return float(np.max(dev) - np.min(dev))


def erdos_turan_bound(abs_sums, n_points: int, h_max: int | None = None) -> float:
    """3 * (N/(H+1) + sum_{h<=H} |S_h| / h) for |S_h| = |sum_n e(h x_n)|."""
    sums = np.asarray(abs_sums, dtype=np.float64)
    if h_max is None:
        h_max = sums.size
    if h_max < 1:
        raise ValueError("need H >= 1")
    h = np.arange(1, h_max + 1, dtype=np.float64)
    return 3.0 * (n_points / (h_max + 1.0) + float(np.sum(sums[:h_max] / h)))


def point_exponential_sums(points, h_max: int) -> np.ndarray:
    """|S_h| for h = 1..H, S_h = sum_n e(h x_n)."""
    xs = _as_sorted(points)
    out = np.empty(h_max, dtype=np.float64)
    for h in range(1, h_max + 1):
        out[h - 1] = abs(np.sum(np.exp(2j * np.pi * h * xs)))
    return out


# ---------------------------------------------------------------------------
# Root sequences.
# ---------------------------------------------------------------------------


def _roots_for_residues(residues: np.ndarray, q: int) -> np.ndarray:
    """Both square roots x/q for every residue in the list (with multiplicity)."""
    from .modular import root_table

    rt = root_table(q)
    r = rt[residues % q]
    keep = r >= 0
    r = r[keep]
    res = residues[keep] % q
    pos = r[res != 0]
    pts = np.concatenate([pos, (q - pos) % q, r[res == 0]])
    return np.sort(pts.astype(np.float64) / q)


def prime_root_points(p_limit: float, q: int) -> PointMultiset:
    """Multiset {x/q : x^2 = p (mod q), p prime <= P, p a residue mod q}."""
    primes = sieve_primes(int(p_limit))
    if primes.size == 0:
        return PointMultiset.from_values([])
    leg = legendre_table(q)
    residues = primes[leg[primes % q] == 1].astype(np.int64)
    return PointMultiset.from_values(_roots_for_residues(residues % q, q))


def product_root_points(p_limit: float, r_limit: float, q: int) -> PointMultiset:
    """Multiset {x/q : x^2 = p*r (mod q)} over ordered prime pairs p <= P, r <= R.

    Multiplicity is preserved: distinct pairs with the same product residue
    contribute separate copies of both roots.
    """
    ps = sieve_primes(int(p_limit))
    rs = sieve_primes(int(r_limit))
    if ps.size == 0 or rs.size == 0:
        return PointMultiset.from_values([])
    leg = legendre_table(q)
    counts = np.zeros(q, dtype=np.int64)
    r_res = rs % q
    for p in ps:
        np.add.at(counts, (int(p) % q) * r_res % q, 1)
    from .modular import root_table

    rt = root_table(q)
    pts = []
    for c in np.nonzero(counts)[0]:
        c = int(c)
        if c == 0 or leg[c] != 1:
            continue
        r = int(rt[c])
        mult = int(counts[c])
        pts.extend([r / q] * mult)
        pts.extend([(q - r) / q] * mult)
    return PointMultiset.from_values(pts)


def root_discrepancy_envelope(p_limit: float, q: int, slack_exponent: float = 0.0) -> float:
    """Envelope q^{61/1760} P^{61/66} + q^{13/110} P^{9/11} for the prime-root discrepancy."""
    body = q ** (61.0 / 1760.0) * p_limit ** (61.0 / 66.0) + q ** (13.0 / 110.0) * p_limit ** (
        9.0 / 11.0
    )
    return body * slack_factor(q, slack_exponent)


def product_discrepancy_envelope(
    p_limit: float, r_limit: float, q: int, slack_exponent: float = 0.0
) -> float:
    """Envelope q^{1/8} (PR)^{19/24} (P^{7/48}/q^{1/16} + 1)(R^{7/48}/q^{1/16} + 1)."""
    body = (
        q**0.125
        * (p_limit * r_limit) ** (19.0 / 24.0)
        * (p_limit ** (7.0 / 48.0) / q ** (1.0 / 16.0) + 1.0)
        * (r_limit ** (7.0 / 48.0) / q ** (1.0 / 16.0) + 1.0)
    )
    return body * slack_factor(q, slack_exponent)


def gamma_q(p_limit: float, q: int, slack_exponent: float = 2.0) -> DiscrepancyReport:
    """Exact discrepancy of the prime-root multiset together with its envelope."""
    base = discrepancy(prime_root_points(p_limit, q))
    return DiscrepancyReport(
        base.n_points,
        base.value,
        base.witness,
        envelope=root_discrepancy_envelope(p_limit, q, slack_exponent),
        slack_exponent=slack_exponent,
    )


def delta_q(p_limit: float, r_limit: float, q: int, slack_exponent: float = 2.0) -> DiscrepancyReport:
    """Exact discrepancy of the product-root multiset together with its envelope."""
    base = discrepancy(product_root_points(p_limit, r_limit, q))
    return DiscrepancyReport(
        base.n_points,
        base.value,
        base.witness,
        envelope=product_discrepancy_envelope(p_limit, r_limit, q, slack_exponent),
        slack_exponent=slack_exponent,
    )


# ---------------------------------------------------------------------------
# Exponential sums over roots of primes and the coverage check.
# ---------------------------------------------------------------------------


def s_q_sum(h: int, p_limit: float, q: int) -> complex:
    """S_q(h, P) = sum over residue primes p <= P of sum_{x^2 = p} e_q(h x)."""
    if h % q == 0:
        raise ValueError("need gcd(h, q) = 1")
    primes = sieve_primes(int(p_limit))
    if primes.size == 0:
        return 0.0 + 0.0j
    leg = legendre_table(q)
    residues = primes[leg[primes % q] == 1] % q
    table = sqrt_phase_table(q, h)
    return complex(np.sum(table[residues]))


def lambda_weighted_sum(h: int, p_limit: float, q: int) -> complex:
    """The von Mangoldt weighted version: sum_{k <= P} Lambda(k) sum_{x^2 = k} e_q(h x)."""
    if h % q == 0:
        raise ValueError("need gcd(h, q) = 1")
    n = int(p_limit)
    table = sqrt_phase_table(q, h)
    total = 0.0 + 0.0j
    for p in sieve_primes(n):
        p = int(p)
        logp = math.log(p)
        pk = p
        while pk <= n:
            total += logp * table[pk % q]
            pk *= p
    return complex(total)


def prime_sum_from_weighted(h: int, p_limit: float, q: int) -> complex:
    """Recover S_q(h, P) from the Lambda-weighted partial sums by partial summation.

    Abel summation converts sum Lambda(k) g(k) / log k into an integral of the
    weighted partial sums; the remaining prime-power terms (weight 1/j at p^j)
    are subtracted explicitly.
    """
    n = int(p_limit)
    if n < 2:
        return 0.0 + 0.0j
    table = sqrt_phase_table(q, h)
    terms = np.zeros(n + 1, dtype=np.complex128)
    prime_powers: list[tuple[int, int]] = []
    for p in sieve_primes(n):
        p = int(p)
        logp = math.log(p)
        pk, j = p, 1
        while pk <= n:
            terms[pk] = logp * table[pk % q]
            if j >= 2:
                prime_powers.append((pk, j))
            pk *= p
            j += 1
    partial = np.cumsum(terms)  # partial[k] = weighted sum up to k
    k = np.arange(2, n, dtype=np.float64)
    weights = 1.0 / np.log(k) - 1.0 / np.log(k + 1.0)
    total = partial[n] / math.log(n) + np.sum(partial[2:n] * weights)
    for pk, j in prime_powers:
        total -= table[pk % q] / j
    if q <= n:
        total -= table[0]  # p = q is ramified and not part of S_q
    return complex(total)


@dataclass(frozen=True)
class CoverageReport:
    q: int
    covered: int
    fraction: float
    missing: tuple[int, ...]
    threshold_ratio: float


def eos_coverage(q: int, p_limit: float, r_limit: float, s_limit: int) -> CoverageReport:
    """Mark residues representable as p*r*s^2 with primes p <= P, r <= R and s <= S.

    The threshold ratio (PR)^{3/16} S / q^{9/8} is reported, not asserted; the
    covering claim's constant is inexplicit.
    """
    if q > 5000:
        raise SizeGuardError("coverage scan restricted to q <= 5000")
    ps = sieve_primes(int(p_limit)) % q
    rs = sieve_primes(int(r_limit)) % q
    marked = np.zeros(q, dtype=bool)
    for p in np.unique(ps):
        marked[(int(p) * np.unique(rs)) % q] = True
    marked[0] = False
    squares = np.unique(np.arange(1, min(int(s_limit), q) + 1, dtype=np.int64) ** 2 % q)
    squares = squares[squares != 0]
    covered = np.zeros(q, dtype=bool)
    base = np.nonzero(marked)[0]
    for t in squares:
        covered[base * int(t) % q] = True
    covered[0] = False
    hit = int(np.count_nonzero(covered))
    missing = tuple(int(v) for v in np.nonzero(~covered)[0][1:])
    threshold = (p_limit * r_limit) ** (3.0 / 16.0) * s_limit / q ** (9.0 / 8.0)
    return CoverageReport(
        q=q,
        covered=hit,
        fraction=hit / (q - 1),
        missing=missing,
        threshold_ratio=threshold,
    )


def gamma_sweep(
    q_values: tuple[int, ...] = (503, 1009, 2003, 5003),
    exponents: tuple[float, ...] = (0.7, 0.85, 1.0),
    slack_exponent: float = 2.0,
) -> list[dict]:
    """Discrepancy of prime-root sequences against the envelope and the trivial bound."""
    rows = []
    for q in q_values:
        for expo in exponents:
            p_limit = int(round(q**expo))
            report = gamma_q(p_limit, q, slack_exponent)
            trivial = 2.0 * len(sieve_primes(p_limit))
            rows.append(
                {
                    "q": q,
                    "P": p_limit,
                    "exponent": expo,
                    "n_points": report.n_points,
                    "discrepancy": report.value,
                    "envelope": report.envelope,
                    "ratio": report.ratio,
                    "trivial_bound": trivial,
                }
            )
    return rows
