"""Scalar layer: gamma, digamma, zeta, zeta', Bernoulli numbers."""

import math

import pytest

from besselsums.errors import CapacityError, PoleError
from besselsums.special import (EULER_GAMMA, ZETA_EVEN, ZetaCache, bernoulli,
                                digamma, gamma, lgamma_signed, rgamma, sinpi,
                                zeta, zeta_ln_signed, zeta_near_one,
                                zeta_prime_neg_int)

SQRT_PI = math.sqrt(math.pi)

# 20-digit references for spot checks
ZETA_HALF = -1.4603545088095868129
ZETA_3 = 1.2020569031595942854
ZETA_PRIME_M1 = -0.16542114370045092921
ZETA_PRIME_M3 = 0.0053785763577743011444
GAMMA_QUARTER = 3.6256099082219083119
DIGAMMA_03 = -3.502524222200132989


class TestGamma:
    def test_classical_values(self):
        assert gamma(0.5) == pytest.approx(SQRT_PI, rel=1e-14)
        assert gamma(5.0) == pytest.approx(24.0, rel=1e-14)
        assert gamma(1.5) == pytest.approx(0.5 * SQRT_PI, rel=1e-14)
        assert gamma(0.25) == pytest.approx(GAMMA_QUARTER, rel=1e-14)

    def test_negative_arguments(self):
        # Gamma(-0.5) = -2 sqrt(pi)
        assert gamma(-0.5) == pytest.approx(-2.0 * SQRT_PI, rel=1e-13)
        assert gamma(-1.5) == pytest.approx(4.0 * SQRT_PI / 3.0, rel=1e-13)

    def test_poles_raise(self):
        for x in (0.0, -1.0, -7.0):
            with pytest.raises(PoleError):
                gamma(x)

    def test_cap(self):
        with pytest.raises(CapacityError):
            gamma(171.0)

    def test_reflection_grid(self):
        for i in range(1, 20):
            x = i / 20.0
            assert gamma(x) * gamma(1.0 - x) * sinpi(x) / math.pi == \
                pytest.approx(1.0, abs=1e-12)

    def test_duplication_grid(self):
        for z in (0.3, 0.7, 1.3, 2.7, 5.5, 20.2, 60.1):
            lhs = gamma(2.0 * z)
            rhs = 2.0 ** (2.0 * z - 1.0) / SQRT_PI * gamma(z) * gamma(z + 0.5)
            assert lhs == pytest.approx(rhs, rel=1e-12)

    def test_lgamma_signed_matches_stdlib(self):
        for x in (-20.3, -5.7, -0.2, 0.1, 3.4, 88.0, 400.5):
            ln, sign = lgamma_signed(x)
            assert ln == pytest.approx(math.lgamma(x), rel=0, abs=2e-12)
            ref_sign = 1.0 if math.gamma(x) > 0 else -1.0 if x < 170 else 1.0
            if x < 170:
                assert sign == ref_sign

    def test_rgamma_entire(self):
        assert rgamma(0.0) == 0.0
        assert rgamma(-3.0) == 0.0
        assert rgamma(2.5) == pytest.approx(1.0 / gamma(2.5), rel=1e-14)


class TestDigamma:
    def test_classical_values(self):
        assert digamma(1.0) == pytest.approx(-EULER_GAMMA, rel=1e-13)
        assert digamma(2.0) == pytest.approx(1.0 - EULER_GAMMA, rel=1e-13)
        assert digamma(0.5) == pytest.approx(-EULER_GAMMA - 2.0 * math.log(2.0),
                                             rel=1e-13)
        assert digamma(0.3) == pytest.approx(DIGAMMA_03, rel=1e-13)

    def test_recurrence(self):
        for x in (0.7, 2.3, 9.9):
            assert digamma(x + 1.0) == pytest.approx(digamma(x) + 1.0 / x,
                                                     rel=1e-12)

    def test_pole(self):
        with pytest.raises(PoleError):
            digamma(-2.0)


class TestZeta:
    def test_examples(self):
        assert zeta(0.0) == pytest.approx(-0.5, rel=1e-14)
        assert zeta(-2.0) == 0.0
        assert zeta(2.0) == pytest.approx(math.pi ** 2 / 6.0, rel=1e-13)
        assert zeta(3.0) == pytest.approx(ZETA_3, rel=1e-13)
        assert zeta(0.5) == pytest.approx(ZETA_HALF, rel=1e-13)
        assert zeta(-1.0) == pytest.approx(-1.0 / 12.0, rel=1e-13)

    def test_pole(self):
        with pytest.raises(PoleError):
            zeta(1.0)

    def test_functional_equation(self):
        for s in (-3.5, -2.5, -0.5, 0.5):
            rhs = 2.0 ** s * math.pi ** (s - 1.0) * zeta(1.0 - s) \
                * gamma(1.0 - s) * sinpi(0.5 * s)
            assert zeta(s) == pytest.approx(rhs, rel=1e-11)

    def test_trivial_zeros_exact(self):
        for m in range(1, 21):
            assert zeta(-2.0 * m) == 0.0

    def test_near_one_expansion(self):
        assert zeta_near_one(0.0) == pytest.approx(EULER_GAMMA, rel=1e-13)
        for u in (0.3, -0.3, 0.01, -0.01):
            assert zeta_near_one(u) == pytest.approx(zeta(1.0 + u) - 1.0 / u,
                                                     rel=0, abs=1e-12)

    def test_deep_negative_log_form(self):
        # 20-digit reference: zeta(-143.5) = 3.0080271952847940981e133
        assert zeta(-143.5) == pytest.approx(3.0080271952847940981e133,
                                             rel=1e-12)
        ln, sign = zeta_ln_signed(-143.5)
        assert sign == 1.0
        assert ln == pytest.approx(math.log(3.0080271952847940981e133),
                                   rel=0, abs=1e-11)


class TestZetaPrime:
    def test_at_zero(self):
        assert zeta_prime_neg_int(0) == pytest.approx(
            -0.5 * math.log(2.0 * math.pi), rel=1e-13)

    def test_even_closed_relation(self):
        assert zeta_prime_neg_int(2) == pytest.approx(
            -ZETA_3 / (4.0 * math.pi ** 2), rel=1e-12)

    def test_odd_against_finite_difference(self):
        # central difference of zeta at -3, step 1e-5
        h = 1e-5
        fd = (zeta(-3.0 + h) - zeta(-3.0 - h)) / (2.0 * h)
        assert zeta_prime_neg_int(3) == pytest.approx(fd, rel=0, abs=1e-7)
        assert zeta_prime_neg_int(3) == pytest.approx(ZETA_PRIME_M3, rel=1e-11)

    def test_minus_one(self):
        assert zeta_prime_neg_int(1) == pytest.approx(ZETA_PRIME_M1, rel=1e-11)

    def test_deep_arguments_finite(self):
        # 20-digit references at the depth the order-0 K form reaches
        assert zeta_prime_neg_int(143) == pytest.approx(
            -2.7823582034347533227e133, rel=1e-11)
        assert zeta_prime_neg_int(144) == pytest.approx(
            3.2017317010211868872e134, rel=1e-11)


class TestBernoulliAndCache:
    def test_values(self):
        assert bernoulli(0) == 1.0
        assert bernoulli(1) == -0.5
        assert bernoulli(2) == pytest.approx(1.0 / 6.0, rel=1e-15)
        assert bernoulli(12) == pytest.approx(-691.0 / 2730.0, rel=1e-15)

    def test_cap(self):
        with pytest.raises(CapacityError):
            bernoulli(130)

    def test_cache_matches_bernoulli_formula(self):
        # zeta(2m) = (2 pi)^2m |B_2m| / (2 (2m)!) to 1e-14 relative
        for m in range(1, 65):
            ref = zeta(2.0 * m)
            assert abs(ZETA_EVEN.even(m) / ref - 1.0) <= 1e-14

    def test_cache_immutable_and_capped(self):
        zc = ZetaCache(cap=8)
        assert isinstance(zc.even_values, tuple)
        assert zc.even(9) == 1.0  # beyond cap: 1.0 to double precision
        with pytest.raises(CapacityError):
            ZetaCache(cap=100)

    def test_scipy_cross_check(self):
        ss = pytest.importorskip("scipy.special")
        for s in (1.3, 2.0, 7.7, 19.2):
            assert zeta(s) == pytest.approx(float(ss.zeta(s)), rel=1e-13)
        for x in (0.2, 1.7, 33.3):
            assert gamma(x) == pytest.approx(float(ss.gamma(x)), rel=1e-13)
            assert digamma(x) == pytest.approx(float(ss.psi(x)), rel=1e-12)
