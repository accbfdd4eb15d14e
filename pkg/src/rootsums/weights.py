"""Weight vectors on dyadic residue intervals and the additive energy of squares.

The central objects: complex weights beta supported on [N, 2N), the
correlation counts Q_{lambda} of pairs (u, v) with u - v = lambda whose
squares land in the weighted window, the energy sum over quadruples with
u + y = x + v, and the polynomial envelopes those quantities are measured
against.

Dyadic intervals are half-open [N, 2N) throughout, and j*u^2 is always
reduced to the representative in [1, q].
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SizeGuardError
from .reports import slack_factor

_PAIR_LIMIT = 1 << 26  # largest support^2 handled by exact pair accumulation


class WeightVector:
    """Complex weights on the residue window [start, 2*start) inside [1, q].

    ``coeffs[i]`` is the weight of residue ``start + i``.  Norms are computed
    once and cached; construction verifies the Cauchy-Schwarz consistency
    ||b||_2^2 <= ||b||_inf * ||b||_1.
    """

    __slots__ = ("q", "start", "coeffs", "norm_inf", "norm1", "norm2")

    def __init__(self, q: int, start: int, coeffs: np.ndarray):
        if start < 1:
            raise ValueError("interval start must be >= 1")
        if 2 * start - 1 > q:
            raise ValueError("support [N, 2N) must stay inside [1, q]")
        coeffs = np.asarray(coeffs, dtype=np.complex128)
        if coeffs.shape != (start,):
            raise ValueError(f"expected {start} coefficients for [N, 2N)")
        self.q = q
        self.start = start
        self.coeffs = coeffs
        mags = np.abs(coeffs)
        self.norm_inf = float(mags.max()) if start else 0.0
        self.norm1 = float(mags.sum())
        self.norm2 = float(math.sqrt(float((mags * mags).sum())))
        if self.norm2**2 > self.norm_inf * self.norm1 * (1 + 1e-9) + 1e-12:
            raise ValueError("norm inconsistency: ||b||_2^2 > ||b||_inf * ||b||_1")

    @classmethod
    def indicator(cls, q: int, start: int) -> "WeightVector":
        return cls(q, start, np.ones(start))

    @classmethod
    def random_pm1(cls, q: int, start: int, rng: np.random.Generator) -> "WeightVector":
        return cls(q, start, rng.choice([-1.0, 1.0], size=start))

    @classmethod
    def random_phase(cls, q: int, start: int, rng: np.random.Generator) -> "WeightVector":
        return cls(q, start, np.exp(2j * np.pi * rng.random(start)))

    @classmethod
    def make(cls, kind: str, q: int, start: int, rng: np.random.Generator) -> "WeightVector":
        if kind == "indicator":
            return cls.indicator(q, start)
        if kind == "pm1":
            return cls.random_pm1(q, start, rng)
        if kind == "phase":
            return cls.random_phase(q, start, rng)
        raise ValueError(f"unknown weight class {kind!r}")

    def value_at(self, residue: int) -> complex:
        """Weight of a residue in [1, q]; zero off the support window."""
        if self.start <= residue < 2 * self.start:
            return complex(self.coeffs[residue - self.start])
        return 0.0 + 0.0j

    def is_real(self) -> bool:
        return bool(np.all(self.coeffs.imag == 0.0))


def square_residues(q: int, j: int) -> np.ndarray:
    """Array s with s[u] = representative of j*u^2 (mod q) in [1, q]."""
    u = np.arange(q, dtype=np.int64)
    s = (j % q) * (u * u % q) % q
    s[s == 0] = q
    return s


def weights_on_squares(beta: WeightVector, j: int) -> np.ndarray:
    """Complex array w with w[u] = beta_{j*u^2} for u in [0, q)."""
    s = square_residues(beta.q, j)
    idx = s - beta.start
    mask = (idx >= 0) & (idx < beta.start)
    w = np.zeros(beta.q, dtype=np.complex128)
    w[mask] = beta.coeffs[idx[mask]]
    return w


def admissible_square_members(q: int, start: int, j: int = 1) -> np.ndarray:
    """All u in [0, q) whose reduced j*u^2 lies in [start, 2*start)."""
    s = square_residues(q, j)
    return np.nonzero((s >= start) & (s < 2 * start))[0].astype(np.int64)


def _pair_accumulate(idx: np.ndarray, vals: np.ndarray, q: int, mode: str) -> np.ndarray:
    """Accumulate sum of w_i * conj(w_j) over pairs into residue classes.

    mode 'diff' buckets (u_i - u_j) mod q, mode 'sum' buckets (u_i + u_j) mod q.
    """
    if len(idx) ** 2 > _PAIR_LIMIT:
        raise SizeGuardError("weight support too large for exact pair accumulation")
    if len(idx) == 0:
        return np.zeros(q, dtype=np.complex128)
    if mode == "diff":
        keys = (idx[:, None] - idx[None, :]) % q
    else:
        keys = (idx[:, None] + idx[None, :]) % q
    prods = vals[:, None] * np.conj(vals)[None, :]
    out = np.bincount(keys.ravel(), weights=prods.real.ravel(), minlength=q).astype(
        np.complex128
    )
    if np.any(prods.imag):
        out += 1j * np.bincount(keys.ravel(), weights=prods.imag.ravel(), minlength=q)
    return out


def q_table(beta: WeightVector, j: int) -> np.ndarray:
    """Q_lambda for every lambda in F_q: sum over u - v = lambda of b_{ju^2} conj(b_{jv^2})."""
    if j % beta.q == 0:
        raise ValueError("j must be invertible mod q")
    w = weights_on_squares(beta, j)
    idx = np.nonzero(w)[0]
    return _pair_accumulate(idx, w[idx], beta.q, "diff")


def q_lambda(beta: WeightVector, lam: int, j: int, q: int | None = None) -> complex:
    """Single correlation count Q_{lambda, j}(beta); O(q) direct evaluation."""
    if q is not None and q != beta.q:
        raise ValueError("modulus mismatch")
    q = beta.q
    if j % q == 0:
        raise ValueError("j must be invertible mod q")
    w = weights_on_squares(beta, j)
    return complex(np.sum(w * np.conj(np.roll(w, lam % q))))


def q_table_indicator(q: int, start: int, j: int = 1) -> np.ndarray:
    """Exact integer Q_lambda table for the indicator weight on [start, 2*start)."""
    if j % q == 0:
        raise ValueError("j must be invertible mod q")
    idx = admissible_square_members(q, start, j)
    if len(idx) ** 2 > _PAIR_LIMIT:
        raise SizeGuardError("indicator support too large for exact pair counting")
    if len(idx) == 0:
        return np.zeros(q, dtype=np.int64)
    keys = (idx[:, None] - idx[None, :]) % q
    return np.bincount(keys.ravel(), minlength=q).astype(np.int64)


def energy(beta: WeightVector, j: int = 1) -> complex:
    """Weighted additive energy: sum over u + y = x + v of the four-fold weight product.

    Computed as sum over lambda of Q_lambda^2 (difference histogram); the
    sum-histogram oracle below takes the other grouping of the same quadruple
    sum, so agreement between the two is a real consistency check.
    """
    table = q_table(beta, j)
    return complex(np.sum(table * table))


def energy_pair_histogram(beta: WeightVector, j: int = 1) -> complex:
    """Oracle energy via the pair-sum histogram A(w) = sum_{u+y=w} b_{ju^2} conj(b_{jy^2})."""
    w = weights_on_squares(beta, j)
    idx = np.nonzero(w)[0]
    hist = _pair_accumulate(idx, w[idx], beta.q, "sum")
    return complex(np.sum(hist * hist))


def energy_quadruple_loop(beta: WeightVector, j: int = 1) -> complex:
    """Literal quadruple loop over F_q^4; only sane for tiny q."""
    q = beta.q
    if q > 23:
        raise SizeGuardError("quadruple loop oracle restricted to q <= 23")
    w = weights_on_squares(beta, j)
    total = 0.0 + 0.0j
    for u in range(q):
        for v in range(q):
            for x in range(q):
                y = (x + v - u) % q
                total += w[u] * np.conj(w[v]) * w[x] * np.conj(w[y])
    return complex(total)


def unweighted_energy(start: int, q: int, j: int = 1) -> int:
    """Exact count of quadruples u + v = x + y with all four reduced squares in [N, 2N).

    Production path: histogram of pair sums over the admissible set.
    """
    if 2 * start > q:
        raise ValueError("need 2N <= q")
    idx = admissible_square_members(q, start, j)
    if len(idx) == 0:
        return 0
    if len(idx) ** 2 > _PAIR_LIMIT:
        raise SizeGuardError("interval too large for exact pair counting")
    keys = (idx[:, None] + idx[None, :]) % q
    hist = np.bincount(keys.ravel(), minlength=q)
    return int(np.sum(hist.astype(object) ** 2))


def unweighted_energy_oracle(start: int, q: int, j: int = 1) -> int:
    """Independent recount via the difference histogram (sum of Q_lambda^2)."""
    table = q_table_indicator(q, start, j)
    return int(np.sum(table.astype(object) ** 2))


def q_fourth_moment(beta: WeightVector, j: int = 1) -> float:
    """sum over lambda != 0 of Q_lambda^4 (|Q_lambda|^4 for complex weights)."""
    table = q_table(beta, j)
    vals = np.abs(table) if not beta.is_real() else table.real
    vals = vals.copy()
    vals[0] = 0.0
    return float(np.sum(vals**4))


def q_fourth_moment_indicator(q: int, start: int, j: int = 1) -> int:
    """Exact integer fourth moment of the indicator Q table over lambda != 0."""
    table = q_table_indicator(q, start, j)
    return int(np.sum(table[1:].astype(object) ** 4))


@dataclass(frozen=True)
class EnergyReport:
    """Energy plus the per-lambda correlation table and its fourth moment."""

    q: int
    j: int
    energy: complex
    q_by_lambda: np.ndarray
    fourth_moment: float


def energy_report(beta: WeightVector, j: int = 1) -> EnergyReport:
    table = q_table(beta, j)
    vals = np.abs(table) if not beta.is_real() else table.real
    vals = vals.copy()
    vals[0] = 0.0
    return EnergyReport(
        q=beta.q,
        j=j,
        energy=complex(np.sum(table * table)),
        q_by_lambda=table,
        fourth_moment=float(np.sum(vals**4)),
    )


# ---------------------------------------------------------------------------
# Envelopes.  Each returns the bare polynomial right-hand side; pass a
# nonzero slack exponent to multiply in the (log q)^s stand-in for o(1).
# ---------------------------------------------------------------------------


def small_interval_energy_envelope(start: int, q: int, slack_exponent: float = 0.0) -> float:
    """Envelope N^6/q + N^2 for the unweighted energy with N <= sqrt(q)."""
    return (start**6 / q + start**2) * slack_factor(q, slack_exponent)


def fourth_moment_envelope(start: int, q: int, slack_exponent: float = 0.0) -> float:
    """Envelope N^{13/2}/q^{3/2} + N^3 for the fourth moment over lambda != 0."""
    return (start**6.5 / q**1.5 + start**3) * slack_factor(q, slack_exponent)


def energy_envelope_short(
    norm_inf: float, norm1: float, start: int, q: int, slack_exponent: float = 0.0
) -> float:
    """Energy envelope ||b||_inf^{8/3} ||b||_1^{4/3} (N^{13/6}/sqrt(q) + N)."""
    body = norm_inf ** (8.0 / 3.0) * norm1 ** (4.0 / 3.0)
    return body * (start ** (13.0 / 6.0) / math.sqrt(q) + start) * slack_factor(q, slack_exponent)


def energy_envelope_long(
    norm_inf: float, norm1: float, start: int, q: int, slack_exponent: float = 0.0
) -> float:
    """Energy envelope ||b||_inf^2 ||b||_1^2 (N^2/q + sqrt(N)), better for long windows."""
    body = norm_inf**2 * norm1**2
    return body * (start**2 / q + math.sqrt(start)) * slack_factor(q, slack_exponent)


# ---------------------------------------------------------------------------
# Sweeps (shared by the CLI, the calibration fixture and the tests).
# ---------------------------------------------------------------------------


def small_energy_sweep(q_max: int = 499) -> list[dict]:
    """Unweighted energy against N^6/q + N^2 for primes q <= q_max, N <= sqrt(q)."""
    from .primes import sieve_primes

    rows = []
    for q in sieve_primes(q_max):
        q = int(q)
        if q < 5:
            continue
        for start in range(1, math.isqrt(q) + 1):
            measured = unweighted_energy(start, q)
            envelope = small_interval_energy_envelope(start, q)
            rows.append(
                {
                    "q": q,
                    "N": start,
                    "measured": float(measured),
                    "envelope": envelope,
                    "ratio": measured / envelope,
                }
            )
    return rows


def fourth_moment_sweep(q_max: int = 499, slack_exponent: float = 2.0) -> list[dict]:
    """Indicator fourth moment against its envelope with (log q)^s slack."""
    from .primes import sieve_primes

    rows = []
    for q in sieve_primes(q_max):
        q = int(q)
        if q < 5:
            continue
        for start in range(1, math.isqrt(q) + 1):
            measured = q_fourth_moment_indicator(q, start)
            envelope = fourth_moment_envelope(start, q, slack_exponent)
            rows.append(
                {
                    "q": q,
                    "N": start,
                    "measured": float(measured),
                    "envelope": envelope,
                    "ratio": measured / envelope,
                }
            )
    return rows


def weighted_energy_sweep(
    q_values: tuple[int, ...] = (101, 211, 499),
    kinds: tuple[str, ...] = ("pm1", "phase"),
    seeds_per_cell: int = 5,
    seed: int = 7,
    slack_exponent: float = 2.0,
) -> list[dict]:
    """Random-weight energies against both envelopes over a dyadic (q, N) grid."""
    rows = []
    for q in q_values:
        start = 1
        while 2 * start <= q:
            for kind in kinds:
                for k in range(seeds_per_cell):
                    rng = np.random.default_rng([seed, q, start, kinds.index(kind), k])
                    beta = WeightVector.make(kind, q, start, rng)
                    j = int(rng.integers(1, q))
                    measured = abs(energy(beta, j))
                    env_short = energy_envelope_short(
                        beta.norm_inf, beta.norm1, start, q, slack_exponent
                    )
                    env_long = energy_envelope_long(
                        beta.norm_inf, beta.norm1, start, q, slack_exponent
                    )
                    rows.append(
                        {
                            "q": q,
                            "N": start,
                            "j": j,
                            "kind": kind,
                            "seed": k,
                            "measured": measured,
                            "envelope_short": env_short,
                            "envelope_long": env_long,
                            "ratio_short": measured / env_short,
                            "ratio_long": measured / env_long,
                        }
                    )
            start *= 2
    return rows
