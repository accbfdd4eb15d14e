"""Field arithmetic: symbols, inverses, square roots, phases."""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rootsums.modular import (
    PrimeField,
    e_q,
    eps_q,
    inv_mod,
    kronecker,
    legendre_table,
    reduced_residue,
    sqrt_mod,
    tonelli_shanks,
)
from rootsums.primes import is_prime, sieve_primes

SMALL_PRIMES = [int(q) for q in sieve_primes(500) if q % 2 == 1]


class TestKronecker:
    def test_divisible(self):
        assert kronecker(0, 7) == 0
        assert kronecker(14, 7) == 0

    def test_euler_criterion_examples(self):
        # 2^3 = 1 (mod 7), 5^3 = 6 (mod 7)
        assert kronecker(2, 7) == 1
        assert kronecker(5, 7) == -1

    def test_zero_modulus_rejected(self):
        with pytest.raises(ValueError):
            kronecker(3, 0)

    def test_even_and_negative_arguments(self):
        # (a/2) is 0 for even a and +-1 by a mod 8
        assert kronecker(7, 2) == 1
        assert kronecker(3, 2) == -1
        assert kronecker(4, 2) == 0
        assert kronecker(-7, 2) == 1  # -7 = 1 (mod 8)
        assert kronecker(-67, 2) == -1  # -67 = 5 (mod 8)

    @given(st.integers(min_value=-10**6, max_value=10**6), st.sampled_from(SMALL_PRIMES))
    def test_matches_euler_criterion(self, a, q):
        expected = pow(a % q, (q - 1) // 2, q)
        if expected == q - 1:
            expected = -1
        assert kronecker(a, q) == expected

    @pytest.mark.parametrize("q", [int(p) for p in sieve_primes(200) if p % 2 == 1])
    def test_multiplicative_exhaustive(self, q):
        leg = legendre_table(q).astype(np.int64)
        a = np.arange(q, dtype=np.int64)
        assert np.array_equal(leg[a[:, None] * a[None, :] % q], leg[:, None] * leg[None, :])

    @pytest.mark.parametrize("q", [int(p) for p in sieve_primes(1000) if p % 2 == 1])
    def test_symbol_sums_to_zero(self, q):
        assert int(legendre_table(q).astype(np.int64).sum()) == 0


class TestInverse:
    def test_examples(self):
        assert inv_mod(1, 101) == 1
        assert inv_mod(2, 7) == 4
        assert inv_mod(3, 11) == 4

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            inv_mod(0, 7)
        with pytest.raises(ValueError):
            inv_mod(14, 7)

    @given(st.sampled_from(SMALL_PRIMES), st.integers(min_value=1, max_value=10**9))
    def test_inverse_property(self, q, a):
        if a % q == 0:
            return
        inv = inv_mod(a, q)
        assert 1 <= inv <= q - 1
        assert a * inv % q == 1


class TestSqrt:
    def test_examples(self):
        assert sqrt_mod(1, 7) == (1, 6)
        assert sqrt_mod(2, 7) == (3, 4)
        assert sqrt_mod(3, 7) == ()
        assert sqrt_mod(0, 7) == (0,)

    @pytest.mark.parametrize("q", [int(p) for p in sieve_primes(1000) if p % 2 == 1])
    def test_exhaustive_against_table(self, q):
        """Tonelli-Shanks agrees with the exhaustive root table for every residue."""
        field = PrimeField(q)
        leg = legendre_table(q)
        for a in range(q):
            roots = sqrt_mod(a, q)
            assert roots == field.sqrts(a)
            for r in roots:
                assert r * r % q == a
            if a != 0:
                assert len(roots) == 1 + int(leg[a])

    def test_tonelli_none_for_nonresidue(self):
        assert tonelli_shanks(3, 7) is None

    @given(st.sampled_from(SMALL_PRIMES), st.integers(min_value=0, max_value=10**6))
    def test_roots_square_back(self, q, a):
        for r in sqrt_mod(a % q, q):
            assert r * r % q == a % q

    def test_large_modulus_path(self):
        # above the table threshold everything still works
        q = (1 << 31) - 1  # Mersenne prime
        field = PrimeField(q, table_limit=1 << 10)
        assert not field.has_tables
        a = 123456789
        roots = field.sqrts(a * a % q)
        assert a in roots or q - a in roots


class TestPhases:
    def test_eps(self):
        assert eps_q(5) == 1
        assert eps_q(7) == 1j
        assert eps_q(13) == 1

    def test_e_q_examples(self):
        assert e_q(0, 11) == pytest.approx(1.0)
        assert e_q(11, 11) == pytest.approx(1.0)
        assert e_q(1, 5) == pytest.approx(cmath.exp(2j * math.pi / 5))
        assert e_q(1, 5).real == pytest.approx(0.30902, abs=1e-5)
        assert e_q(1, 5).imag == pytest.approx(0.95106, abs=1e-5)

    @given(
        st.sampled_from(SMALL_PRIMES),
        st.integers(min_value=-10**9, max_value=10**9),
        st.integers(min_value=-10**9, max_value=10**9),
    )
    def test_additive(self, q, x, y):
        assert abs(e_q(x, q) * e_q(y, q) - e_q(x + y, q)) < 1e-12

    def test_reduced_residue(self):
        assert reduced_residue(0, 7) == 7
        assert reduced_residue(7, 7) == 7
        assert reduced_residue(9, 7) == 2


class TestPrimeField:
    def test_rejects_bad_moduli(self):
        for bad in (1, 2, 9, 15, 21, 1 << 62):
            with pytest.raises(ValueError):
                PrimeField(bad)

    def test_tables_match_scalar_path(self):
        q = 211
        with_tables = PrimeField(q)
        without = PrimeField(q, table_limit=1)
        for a in range(1, q):
            assert with_tables.legendre(a) == without.legendre(a) == kronecker(a, q)
            assert with_tables.inv(a) == without.inv(a)
            assert with_tables.sqrts(a) == without.sqrts(a)

    def test_two_roots_for_residues(self):
        field = PrimeField(101)
        for a in range(1, 101):
            if field.legendre(a) == 1:
                r1, r2 = field.sqrts(a)
                assert r1 + r2 == 101 and r1 * r1 % 101 == a


class TestPrimes:
    def test_is_prime(self):
        assert is_prime(2) and is_prime(67) and is_prime((1 << 61) - 1)
        assert not is_prime(1) and not is_prime(561) and not is_prime(67 * 71)

    def test_sieve_matches_mr(self):
        sieved = set(int(p) for p in sieve_primes(2000))
        assert sieved == {n for n in range(2001) if is_prime(n)}
