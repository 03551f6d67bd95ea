import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special as sps

from stfdof.errors import DomainError, RangeError
from stfdof.special import (gamma_lower_bound, harmonic_addition_kernel, legendre_p,
                            legendre_sequence, spherical_bessel_bound, spherical_bessel_j,
                            spherical_bessel_sequence)


def series_oracle(n, x, dps=50):
    """Ascending power series x^n sum_m (-x^2/2)^m / (m! (2n+2m+1)!!),
    summed in extended precision until terms stop mattering."""
    with mpmath.workdps(dps):
        x = mpmath.mpf(x)
        total, m = mpmath.mpf(0), 0
        while True:
            term = (-x * x / 2) ** m / (mpmath.factorial(m) * mpmath.fac2(2 * n + 2 * m + 1))
            total += term
            if m > 5 and abs(term) < mpmath.mpf(10) ** (-dps + 5) * abs(total):
                break
            m += 1
        return float(x ** n * total)


# j_5(1) from the power series above at 50 digits
J5_AT_1 = 9.2561158611258163567e-05


class TestSphericalBessel:
    def test_j0_closed_form(self):
        assert spherical_bessel_j(0, 1.0) == pytest.approx(math.sin(1.0), rel=1e-15)

    @pytest.mark.parametrize("n", [1, 2, 7, 200])
    def test_zero_argument(self, n):
        assert spherical_bessel_j(n, 0.0) == 0.0
        assert spherical_bessel_j(0, 0.0) == 1.0

    def test_frozen_power_series_value(self):
        assert series_oracle(5, 1.0) == pytest.approx(J5_AT_1, rel=1e-15)
        assert spherical_bessel_j(5, 1.0) == pytest.approx(J5_AT_1, rel=1e-13)

    @pytest.mark.parametrize("n,x", [(0, 0.3), (1, 0.01), (3, 2.5), (10, 4.0), (20, 6.0), (40, 9.0)])
    def test_against_series_oracle(self, n, x):
        assert spherical_bessel_j(n, x) == pytest.approx(series_oracle(n, x, dps=80), rel=1e-12)

    def test_twelve_digits_on_supported_range(self):
        rng = np.random.default_rng(7)
        for _ in range(400):
            n = int(rng.integers(0, 201))
            x = float(rng.uniform(0, 500)) if rng.random() < 0.5 else float(rng.uniform(0, n + 5))
            ref = sps.spherical_jn(n, x)
            with mpmath.workdps(40):
                exact = float(mpmath.sqrt(mpmath.pi / (2 * mpmath.mpf(x)))
                              * mpmath.besselj(n + mpmath.mpf(1) / 2, x)) if x else ref
            # absolute floor covers values sitting on a zero of j_n
            assert abs(spherical_bessel_j(n, x) - exact) <= 1e-12 * abs(exact) + 1e-16

    @pytest.mark.parametrize("x", [0.0, 0.05, 0.9, 1.3, 3.0, 9.99, 25.0, 141.0])
    def test_sequence_matches_scalar(self, x):
        seq = spherical_bessel_sequence(60, x)
        scalar = np.array([spherical_bessel_j(n, x) for n in range(61)])
        np.testing.assert_allclose(seq, scalar, rtol=1e-12, atol=1e-300)

    def test_high_order_underflows_quietly(self):
        assert spherical_bessel_j(10_000, 100.0) == 0.0

    @pytest.mark.parametrize("n,x", [(-1, 1.0), (10_001, 1.0), (3, -0.5), (3, math.inf), (3, math.nan)])
    def test_range_errors(self, n, x):
        with pytest.raises(RangeError):
            spherical_bessel_j(n, x)

    @settings(max_examples=300, deadline=None)
    @given(n=st.integers(1, 100), x=st.floats(0.5, 50.0))
    def test_recurrence_consistency(self, n, x):
        lhs = spherical_bessel_j(n - 1, x) + spherical_bessel_j(n + 1, x)
        rhs = (2 * n + 1) / x * spherical_bessel_j(n, x)
        scale = max(abs(spherical_bessel_j(n - 1, x)), abs(spherical_bessel_j(n + 1, x)), abs(rhs))
        assert abs(lhs - rhs) <= 1e-10 * scale


class TestBesselBound:
    def test_order_zero(self):
        assert spherical_bessel_bound(0, 0.0) == pytest.approx(1.0, rel=1e-15)

    def test_log_gamma_value(self):
        # sqrt(pi)/2 * (1/2)^2 / Gamma(7/2) = 1/15 exactly
        expected = math.sqrt(math.pi) / 2 * 0.25 / math.gamma(3.5)
        assert expected == pytest.approx(1 / 15, rel=1e-15)
        assert spherical_bessel_bound(2, 1.0) == pytest.approx(expected, rel=1e-14)

    def test_dominates_on_grid(self):
        for x in np.round(np.arange(0, 501) * 0.1, 10):
            seq = spherical_bessel_sequence(50, float(x))
            for n in range(51):
                assert abs(seq[n]) <= spherical_bessel_bound(n, float(x))

    def test_stays_finite_at_high_order(self):
        assert 0.0 < spherical_bessel_bound(200, 150.0) < math.inf


class TestGammaLowerBound:
    def test_n0(self):
        assert gamma_lower_bound(0) == pytest.approx(math.exp(-0.5) * math.sqrt(2 * math.pi), rel=1e-15)
        assert gamma_lower_bound(0) == pytest.approx(1.52034690106628, rel=1e-13)

    def test_n1_below_gamma(self):
        assert gamma_lower_bound(1) == pytest.approx(0.838956552526496, rel=1e-13)
        assert gamma_lower_bound(1) < math.gamma(1.5)

    def test_n10(self):
        assert gamma_lower_bound(10) == pytest.approx(1124322.40426355, rel=1e-12)
        assert gamma_lower_bound(10) < math.gamma(10.5)

    @pytest.mark.parametrize("n", range(101))
    def test_strictly_below_gamma(self, n):
        ratio = math.exp(math.log(gamma_lower_bound(n)) - math.lgamma(n + 0.5))
        assert 0.0 < ratio < 1.0


class TestLegendre:
    def test_closed_forms(self):
        assert legendre_p(0, 0.3) == 1.0
        assert legendre_p(1, -0.7) == -0.7
        assert legendre_p(3, 0.5) == pytest.approx(-0.4375, abs=1e-15)

    def test_p5(self):
        # (63 u^5 - 70 u^3 + 15 u) / 8 at u = 0.2
        assert legendre_p(5, 0.2) == pytest.approx(0.30752, rel=1e-14)

    @pytest.mark.parametrize("n", [0, 1, 2, 17, 100, 500])
    def test_unity_at_one(self, n):
        assert abs(legendre_p(n, 1.0) - 1.0) <= 1e-12

    @given(n=st.integers(0, 200), u=st.floats(-1.0, 1.0))
    def test_bounded(self, n, u):
        assert abs(legendre_p(n, u)) <= 1.0 + 1e-12

    def test_sequence_agrees(self):
        seq = legendre_sequence(40, -0.37)
        np.testing.assert_allclose(seq, [legendre_p(n, -0.37) for n in range(41)], rtol=0, atol=1e-15)
        np.testing.assert_allclose(seq, sps.eval_legendre(np.arange(41), -0.37), atol=1e-13)

    @pytest.mark.parametrize("u", [1.0000001, -2.0])
    def test_domain(self, u):
        with pytest.raises(DomainError):
            legendre_p(2, u)
        with pytest.raises(DomainError):
            harmonic_addition_kernel(2, u)


class TestAdditionKernel:
    def test_order_zero(self):
        assert harmonic_addition_kernel(0, -0.4) == pytest.approx(1 / (4 * math.pi))

    @pytest.mark.parametrize("n", [0, 3, 30])
    def test_aligned(self, n):
        assert harmonic_addition_kernel(n, 1.0) == pytest.approx((2 * n + 1) / (4 * math.pi))

    def test_p5_value(self):
        assert harmonic_addition_kernel(5, 0.2) == pytest.approx(0.26918830454790809511, rel=1e-13)

    def test_matches_explicit_harmonic_sum(self):
        # sum_m Y_n^m(a) conj(Y_n^m(b)) built from scipy's spherical harmonics
        rng = np.random.default_rng(3)
        for n in (0, 1, 4, 9):
            ta, pa, tb, pb = rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi), rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi)
            m = np.arange(-n, n + 1)
            ya = sps.sph_harm_y(n, m, ta, pa)
            yb = sps.sph_harm_y(n, m, tb, pb)
            explicit = np.sum(ya * np.conj(yb))
            cos_g = np.sin(ta) * np.sin(tb) * np.cos(pa - pb) + np.cos(ta) * np.cos(tb)
            assert explicit.real == pytest.approx(harmonic_addition_kernel(n, float(cos_g)), abs=1e-12)
            assert abs(explicit.imag) < 1e-12

    @given(n=st.integers(0, 150), u=st.floats(-1.0, 1.0))
    def test_below_loose_bound(self, n, u):
        assert abs(harmonic_addition_kernel(n, u)) <= (2 * n + 1) / (2 * math.pi)
