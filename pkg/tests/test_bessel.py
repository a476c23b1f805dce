"""Scaled Bessel kernels."""

import math

import pytest

from besselsums.bessel import (_j_asymptotic, _j_series_dec,
                               _k_asymptotic, _k_combination_dec,
                               bessel_j_scaled, bessel_k_scaled)
from besselsums.errors import DomainError
from besselsums.special import gamma

SQRT_PI = math.sqrt(math.pi)

# 20-digit references
J0_1 = 0.76519768655796655145
K0_1 = 0.42102443824070833334
J_03_20_SCALED = 0.088866890860436172686   # (x/2)^-v J_v at v=0.3, x=20
J_5_30_SCALED = -1.8862919573606857875e-7
K_03_7_SCALED = 0.00029347914740043368034


def j_series_oracle(x: float) -> float:
    # order-0 power series summed to machine exhaustion (no cancellation
    # for small x); independent of the decimal evaluation path
    total = 1.0
    term = 1.0
    k = 0
    q = 0.25 * x * x
    while True:
        k += 1
        term *= -q / (k * k)
        new = total + term
        if new == total:
            return total
        total = new


class TestJKernel:
    def test_value_at_origin(self):
        for nu in (-0.25, 0.0, 0.5, 1.3):
            assert bessel_j_scaled(nu, 0.0) == pytest.approx(
                1.0 / gamma(1.0 + nu), rel=1e-14)

    def test_against_power_series_oracle(self):
        assert bessel_j_scaled(0.0, 1.0) == pytest.approx(
            j_series_oracle(1.0), rel=1e-12)
        assert bessel_j_scaled(0.0, 1.0) == pytest.approx(J0_1, rel=1e-13)

    def test_half_integer_closed_form(self):
        for x in (0.1, 1.0, 5.0, 20.0):
            ref = 2.0 * math.sin(x) / (SQRT_PI * x)
            assert bessel_j_scaled(0.5, x) == pytest.approx(ref, rel=1e-12)

    def test_reference_points(self):
        assert bessel_j_scaled(0.3, 20.0) == pytest.approx(J_03_20_SCALED,
                                                           rel=1e-12)
        assert bessel_j_scaled(5.0, 30.0) == pytest.approx(J_5_30_SCALED,
                                                           rel=1e-11)

    def test_crossover_method_agreement(self):
        # the two evaluation paths agree at the switch point itself; the
        # raw value difference across x = 25 +- 1e-6 is dominated by the
        # kernel's own slope
        for nu in (0.0, 0.5, 1.3, 5.0):
            gap = abs(_j_series_dec(nu, 25.0) - _j_asymptotic(nu, 25.0))
            assert gap < 1e-9

    def test_domain(self):
        with pytest.raises(DomainError):
            bessel_j_scaled(-0.5, 1.0)
        with pytest.raises(DomainError):
            bessel_j_scaled(0.5, -1.0)


class TestKKernel:
    def test_half_integer_closed_form(self):
        for x in (0.1, 1.0, 5.0, 20.0):
            ref = SQRT_PI * math.exp(-x) / x
            assert bessel_k_scaled(0.5, x) == pytest.approx(ref, rel=1e-12)

    def test_integer_order_richardson_limit(self):
        # one-sided Richardson over the non-integer path at eps, 2 eps
        eps = 1e-5
        oracle = 2.0 * bessel_k_scaled(eps, 1.0) - bessel_k_scaled(2 * eps, 1.0)
        assert bessel_k_scaled(0.0, 1.0) == pytest.approx(oracle, rel=0,
                                                          abs=1e-10)
        assert bessel_k_scaled(0.0, 1.0) == pytest.approx(K0_1, rel=1e-12)

    def test_reference_point(self):
        assert bessel_k_scaled(0.3, 7.0) == pytest.approx(K_03_7_SCALED,
                                                          rel=1e-11)

    def test_order_symmetry_internal(self):
        # the combination built with -v equals the +v kernel after undoing
        # the (x/2)^-v scaling: K_-v = K_v
        for nu, x in ((0.3, 1.0), (0.75, 4.0), (1.3, 9.0)):
            plus = _k_combination_dec(nu, x)
            minus = _k_combination_dec(-nu, x)
            assert minus * (0.5 * x) ** (-2.0 * nu) == pytest.approx(
                plus, rel=1e-11)

    def test_crossover_continuity(self):
        for nu in (0.0, 0.3, 1.3):
            lo = bessel_k_scaled(nu, 25.0 - 1e-6)
            hi = bessel_k_scaled(nu, 25.0 + 1e-6)
            assert abs(lo - hi) < 1e-9

    def test_positive(self):
        for nu in (0.0, 0.5, 2.0, 5.0):
            for x in (0.2, 3.0, 17.0, 40.0):
                assert bessel_k_scaled(nu, x) > 0.0

    def test_domain(self):
        with pytest.raises(DomainError):
            bessel_k_scaled(0.5, 0.0)
        with pytest.raises(DomainError):
            bessel_k_scaled(-0.5, 1.0)

    def test_asymptotic_underflow_is_zero(self):
        assert _k_asymptotic(1.0, 800.0) == 0.0


class TestAgainstScipy:
    def test_dense_grid(self):
        ss = pytest.importorskip("scipy.special")
        for nu in (0.0, 0.25, 0.5, 1.0, 1.3, 3.5, 5.0):
            for x in (0.05, 0.7, 3.0, 12.0, 24.9, 25.1, 60.0):
                scale = (0.5 * x) ** -nu
                jr = float(ss.jv(nu, x)) * scale
                if abs(jr) > 1e-250:
                    assert bessel_j_scaled(nu, x) == pytest.approx(
                        jr, rel=2e-12, abs=1e-250)
                kr = float(ss.kv(nu, x)) * scale
                assert bessel_k_scaled(nu, x) == pytest.approx(kr, rel=1e-11)
