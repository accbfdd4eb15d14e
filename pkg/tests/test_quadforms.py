"""Binary quadratic forms, class numbers, chi and the representation function."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rootsums.modular import kronecker
from rootsums.primes import factorize, sieve_primes
from rootsums.quadforms import (
    DUKE_LIMIT_FRACTION,
    BinaryQuadraticForm,
    chi,
    chi_values,
    class_number,
    enumerate_reduced_forms,
    forms_in_window,
    heegner_fraction,
    is_represented,
    l_value_direct,
    l_value_exact,
    l1_chi,
    r_function,
    r_mean_value,
    representation_count,
)

FORM_PRIMES = [int(q) for q in sieve_primes(1000) if q % 4 == 3 and q > 3]


class TestEnumeration:
    def test_h_of_7(self):
        forms = enumerate_reduced_forms(7)
        assert forms == (BinaryQuadraticForm(1, 1, 2),)
        assert class_number(7) == 1

    def test_h_of_23(self):
        forms = enumerate_reduced_forms(23)
        assert set(forms) == {
            BinaryQuadraticForm(1, 1, 6),
            BinaryQuadraticForm(2, 1, 3),
            BinaryQuadraticForm(2, -1, 3),
        }
        assert class_number(23) == 3

    def test_bad_moduli_rejected(self):
        for bad in (3, 5, 13, 15):
            with pytest.raises(ValueError):
                enumerate_reduced_forms(bad)

    @pytest.mark.parametrize("q", FORM_PRIMES[:40] + FORM_PRIMES[-5:])
    def test_forms_are_reduced_with_right_discriminant(self, q):
        forms = enumerate_reduced_forms(q)
        assert len(forms) == len(set(forms))
        for f in forms:
            assert f.discriminant == -q
            assert f.is_reduced and f.is_positive_definite
            assert 3 * f.a * f.c <= q
            assert f.a <= math.isqrt(q // 3) + 1

    @pytest.mark.parametrize("q", FORM_PRIMES[:20])
    def test_no_reduced_form_missed(self, q):
        """Brute force over the coefficient box finds exactly the same set."""
        expected = set()
        bound = math.isqrt(q) + 1
        for a in range(1, bound):
            for b in range(-a, a + 1):
                if (b * b + q) % (4 * a):
                    continue
                c = (b * b + q) // (4 * a)
                f = BinaryQuadraticForm(a, b, c)
                if f.is_reduced and f.discriminant == -q:
                    expected.add(f)
        assert set(enumerate_reduced_forms(q)) == expected


class TestHeegner:
    def test_single_class(self):
        assert heegner_fraction(7) == 1.0
        z = enumerate_reduced_forms(7)[0].heegner_point()
        assert z == pytest.approx(complex(-0.5, math.sqrt(7) / 2))

    @pytest.mark.parametrize("q", FORM_PRIMES[:25])
    def test_points_in_fundamental_domain(self, q):
        for f in enumerate_reduced_forms(q):
            z = f.heegner_point()
            assert -0.5 - 1e-12 <= z.real <= 0.5 + 1e-12
            assert abs(z) >= 1.0 - 1e-12
            assert z.imag > 0

    def test_window_coefficient_bound(self):
        for q in FORM_PRIMES[-10:]:
            for f in forms_in_window(q):
                assert max(abs(f.a), abs(f.b), abs(f.c)) <= (20.0 / 3.0) * math.sqrt(q)

    def test_limit_constant(self):
        assert DUKE_LIMIT_FRACTION == pytest.approx(27.0 / (10.0 * math.pi))
        assert DUKE_LIMIT_FRACTION == pytest.approx(0.85944, abs=1e-5)


class TestChi:
    def test_character_at_two(self):
        assert chi(2, 7) == 1  # -7 = 1 (mod 8)
        assert chi(2, 67) == -1  # -67 = 5 (mod 8)

    @pytest.mark.parametrize("q", [7, 23, 1009, 10007])
    def test_table_matches_direct(self, q):
        vals = chi_values(q, 3000)
        for n in (1, 2, 3, 16, 17, 100, 1024, 2999):
            assert vals[n] == kronecker(-q, n)
        assert vals[0] == 0

    @pytest.mark.parametrize("q", [7, 23])
    def test_table_multiplicative(self, q):
        vals = chi_values(q, 500).astype(int)
        for a in (2, 3, 5, 8):
            for b in (3, 4, 7, 50):
                assert vals[a * b] == vals[a] * vals[b]


class TestRepresentationFunction:
    def test_pinned_values(self):
        assert r_function(1, 7) == 1
        assert r_function(2, 7) == 2  # chi(2) = +1
        assert r_function(3, 7) == 0  # chi(3) = -1

    @pytest.mark.parametrize("q", [7, 23])
    def test_euler_product_matches_divisor_sum(self, q):
        for n in range(1, 10**4 + 1):
            if n % q == 0:
                continue
            assert representation_count(n, q) == 2 * r_function(n, q)

    @given(st.sampled_from([7, 23, 31]), st.integers(min_value=1, max_value=10**6))
    @settings(max_examples=60)
    def test_euler_product_random(self, q, n):
        if n % q == 0:
            return
        assert representation_count(n, q) == 2 * r_function(n, q)


class TestIsRepresented:
    def test_pinned(self):
        assert is_represented(1, 7)
        assert is_represented(2, 7)  # 1 = -7 (mod 8)
        assert not is_represented(18, 67)  # -67 = 5 (mod 8), no square

    @pytest.mark.parametrize("q", [7, 67])
    def test_brute_force_solvability(self, q):
        for n in range(1, 200):
            m = 4 * n
            solvable = any((b * b + q) % m == 0 for b in range(m))
            assert is_represented(n, q) == solvable

    @pytest.mark.parametrize("q", [7, 11, 19, 23, 31])
    def test_criterion_matches_r_positivity(self, q):
        """For squarefree n coprime to q: representable iff r(n) >= 1."""
        for n in range(1, 5001):
            if n % q == 0:
                continue
            if any(e > 1 for e in factorize(n).values()):
                continue
            assert is_represented(n, q) == (r_function(n, q) >= 1)


class TestLValues:
    def test_exact_values(self):
        assert l_value_exact(7) == pytest.approx(math.pi / math.sqrt(7))
        assert l_value_exact(23) == pytest.approx(3 * math.pi / math.sqrt(23))

    @pytest.mark.parametrize("q", [7, 11, 19, 23, 31, 43, 67])
    def test_direct_close_to_exact(self, q):
        truncation = 10**5
        direct, exact = l1_chi(q, truncation)
        assert abs(direct - exact) <= 10.0 / truncation

    def test_mean_value_against_direct_sum(self):
        q = 23
        for x in (1, 10, 97, 400):
            assert r_mean_value(x, q) == sum(r_function(n, q) for n in range(1, x + 1))

    def test_mean_value_is_near_linear(self):
        for q in (1009, 5003):
            l_val = l_value_direct(q, 10**5)
            assert abs(r_mean_value(q, q) - l_val * q) / q < 0.05
