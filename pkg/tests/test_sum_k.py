"""K-sum evaluation paths, coefficients, and special-order forms."""

import math

import pytest

from besselsums.accel import euler_alternating
from besselsums.bessel import bessel_k_scaled
from besselsums.errors import (CapacityError, ConditioningError, DomainError,
                               RegionError, RoutingError)
from besselsums.results import Method
from besselsums.special import gamma, sinpi, zeta
from besselsums.sum_j import coeff_a
from besselsums.sum_k import (KParams, coeff_b, coeff_cprime, coeff_d,
                              exp_sum_int, k_coeff_table, lattice_distance,
                              sum_k_alternating, sum_k_direct,
                              sum_k_half_integer, sum_k_integer_nu,
                              sum_k_nu0, sum_k_polylog, sum_k_theorem3,
                              sum_k_theorem3_dk, t2_k)

SQRT_PI = math.sqrt(math.pi)
TWO_PI = 2.0 * math.pi


def log_oracle(a: float, b: float) -> float:
    # order 1/2: the kernel collapses to sqrt(pi) e^-x / x
    return -SQRT_PI / b * math.log(-math.expm1(-(a + b)))


class TestDirect:
    def test_log_oracle(self):
        r = sum_k_direct(KParams(0.5, 1.0, 0.5), 1e-12)
        assert r.value == pytest.approx(log_oracle(0.5, 1.0), rel=1e-12)

    def test_no_damping_converges(self):
        r = sum_k_direct(KParams(0.0, 2.0, 0.0), 1e-12)
        n0 = sum_k_nu0(0.0, 2.0)
        assert r.value == pytest.approx(n0.value, rel=1e-9)

    def test_tail_dominance(self):
        r = sum_k_direct(KParams(10.0, 1.0, 1.0), 1e-13)
        two = sum(math.exp(-10.0 * n) * bessel_k_scaled(1.0, n) for n in (1, 2))
        assert abs(r.value - two) <= 2.0 * math.exp(-22.0)


class TestPolylog:
    def test_vs_direct(self):
        for a, b, nu in ((2.0, 1.0, 0.25), (1.5, 0.5, 0.75)):
            p = sum_k_polylog(KParams(a, b, nu))
            d = sum_k_direct(KParams(a, b, nu), 1e-11)
            assert p.value == pytest.approx(d.value, rel=1e-9)

    def test_large_damping_uses_fallback_polylog(self):
        p = sum_k_polylog(KParams(7.0, 1.0, 0.25))
        d = sum_k_direct(KParams(7.0, 1.0, 0.25), 1e-13)
        assert p.value == pytest.approx(d.value, rel=1e-10)

    def test_continuity_toward_half_integer(self):
        # approaching order 1/2 the values close in on the exponential form
        ref = sum_k_half_integer(0, 2.0, 1.0).value
        gaps = []
        for eps in (2e-2, 1e-2, 5e-3):
            v = sum_k_polylog(KParams(2.0, 1.0, 0.5 - eps)).value
            gaps.append(abs(v - ref))
        assert gaps[0] > gaps[1] > gaps[2]

    def test_region_and_conditioning(self):
        with pytest.raises(RegionError):
            sum_k_polylog(KParams(0.5, 1.0, 0.25))
        with pytest.raises(ConditioningError):
            sum_k_polylog(KParams(2.0, 1.0, 0.5))
        with pytest.raises(ConditioningError):
            sum_k_polylog(KParams(2.0, 1.0, 1.0 + 5e-4))


class TestCoefficientB:
    def test_corner_value(self):
        # B(0,0) at order 1/4: the Gamma(3/4) pair cancels
        ref = gamma(0.25) * zeta(0.5) * math.sin(-math.pi / 4.0) / SQRT_PI
        assert coeff_b(0, 0, 0.25) == pytest.approx(ref, rel=1e-12)

    def test_nonvanishing_grid(self):
        for m in range(7):
            for n in range(7):
                assert abs(coeff_b(m, n, 0.3)) > 0.0

    def test_against_stdlib_lgamma_recomputation(self):
        m, n, nu = 2, 1, 0.3
        ln = (math.lgamma(0.5 * m + n + 0.5 - nu)
              + math.lgamma(0.5 * m + n + 1.0 - nu)
              - math.lgamma(0.5 * m + 0.5) - math.lgamma(0.5 * m + 1.0)
              - math.lgamma(n + 1.0) - math.lgamma(n + 1.0 - nu))
        ref = math.exp(ln) * zeta(m + 2 * n + 1.0 - 2.0 * nu) \
            * math.sin(math.pi * (0.5 * m - nu))
        assert coeff_b(m, n, nu) == pytest.approx(ref, rel=1e-12)

    def test_pole_zero_collision_bounded(self):
        # zeta pole against the sin zero: the joint value stays finite and
        # continuous as the order crosses (m + 2n)/2
        for m, n in ((1, 1), (2, 0), (0, 2)):
            target = 0.5 * (m + 2 * n)
            lo = coeff_b(m, n, target - 1e-4)
            hi = coeff_b(m, n, target + 1e-4)
            assert math.isfinite(lo) and math.isfinite(hi)
            assert lo == pytest.approx(hi, rel=1e-3)


class TestKernelTerm:
    def test_no_damping(self):
        for b, nu in ((1.0, 0.25), (2.0, 1.3)):
            assert t2_k(0.0, b, nu, "closed") == pytest.approx(
                SQRT_PI * gamma(0.5 - nu) / (2.0 * b), rel=1e-13)

    def test_forms_agree(self):
        assert t2_k(0.5, 1.0, 0.25, "series") == pytest.approx(
            t2_k(0.5, 1.0, 0.25, "closed"), rel=1e-10)

    def test_boundary_series_with_acceleration(self):
        # at a = b the two closed-form pieces individually diverge; the
        # series form with an accelerated tail stays finite.  Oracle:
        # independent terms through math.lgamma, same acceleration.
        a = b = 1.0
        nu = 0.25

        def term(k):
            # nu < 1/2 keeps both gamma arguments positive
            val = math.exp(math.lgamma(0.5 * k + 0.5)
                           + math.lgamma(0.5 * k + 0.5 - nu)
                           + k * math.log(2.0 * a / b) - math.lgamma(k + 1.0))
            return val if k % 2 == 0 else -val

        head = sum(term(k) for k in range(20))
        tail, _ = euler_alternating([term(k) for k in range(20, 90)])
        oracle = (head + tail) / (2.0 * b)
        assert t2_k(a, b, nu, "series") == pytest.approx(oracle, rel=1e-9)

    def test_closed_form_refused_near_boundary(self):
        with pytest.raises(RoutingError):
            t2_k(0.95, 1.0, 0.25, "closed")


class TestTheorem3:
    def test_vs_direct(self):
        for a, b, nu in ((0.1, 1.0, 0.25), (0.0, 1.0, 0.75), (0.5, 0.5, 0.3)):
            t = sum_k_theorem3(KParams(a, b, nu))
            d = sum_k_direct(KParams(a, b, nu), 1e-11)
            assert t.value == pytest.approx(d.value, rel=1e-8)

    def test_conditioning_guard(self):
        for nu in (0.0, 0.5, 1.0, 1.5, 0.5 + 5e-4):
            with pytest.raises(ConditioningError):
                sum_k_theorem3(KParams(0.1, 1.0, nu))

    def test_region_errors(self):
        with pytest.raises(RegionError):
            sum_k_theorem3(KParams(2.0, 1.0, 0.25))
        with pytest.raises(RegionError):
            sum_k_theorem3(KParams(0.5, 6.3, 0.25))

    def test_lattice_distance(self):
        assert lattice_distance(0.5) == 0.0
        assert lattice_distance(1.2503) == pytest.approx(3e-4, rel=1e-6)


class TestDCoefficients:
    def test_even_entries_match_cprime(self):
        nu, b = 0.3, 1.0
        for k in (0, 2, 4):
            assert coeff_d(k, b, nu) == coeff_cprime(k, b, nu)

    def test_odd_relation_against_independent_sum(self):
        # D_{2k+1} - C'_{2k+1} = (-)^{k-1} sum_n (-)^n A_{k,n} (b/2pi)^(2n);
        # the sign-alternating inner sum is recomputed here from coeff_a
        nu, b = 0.3, 1.0
        for k in (0, 1, 2):
            alt = sum((-1.0) ** n * coeff_a(k, n, nu)
                      * (b / TWO_PI) ** (2 * n) for n in range(45))
            gap = coeff_d(2 * k + 1, b, nu) - coeff_cprime(2 * k + 1, b, nu)
            assert gap == pytest.approx((-1.0) ** (k - 1) * alt, rel=1e-12)

    def test_resummation_matches_double_sum(self):
        # the single-series rearrangement reproduces the double sum
        for a, b, nu in ((0.05, 1.0, 0.3), (0.1, 2.0, 0.25)):
            single = sum_k_theorem3_dk(KParams(a, b, nu))
            double = sum_k_theorem3(KParams(a, b, nu))
            assert abs(single.value - double.value) <= \
                1e-10 * (1.0 + abs(double.value))

    def test_table_invariant(self):
        table = k_coeff_table(0.3, 1.0)
        for k in range(0, 10, 2):
            assert table.D[k] == table.Cprime[k]


class TestOrderZero:
    def test_vs_direct(self):
        for a, b in ((0.0, 1.0), (0.2, 1.0), (0.99, 1.0), (1.0, 1.0)):
            n0 = sum_k_nu0(a, b)
            d = sum_k_direct(KParams(a, b, 0.0), 1e-11)
            assert n0.value == pytest.approx(d.value, rel=1e-9)

    def test_equal_parameters_bracket(self):
        # the arcsin bracket collapses to 1/b at a = b; verified through
        # the difference of the full values at a=b and a slightly below
        v_eq = sum_k_nu0(1.0, 1.0)
        d = sum_k_direct(KParams(1.0, 1.0, 0.0), 1e-12)
        assert v_eq.value == pytest.approx(d.value, rel=1e-9)

    def test_boundary_monotone_approach(self):
        b = 1.0
        exact = sum_k_nu0(b, b).value
        gaps = [abs(sum_k_nu0(f * b, b).value - exact)
                for f in (0.99, 0.999, 0.9999)]
        assert gaps[0] > gaps[1] > gaps[2]

    def test_region(self):
        with pytest.raises(RegionError):
            sum_k_nu0(1.5, 1.0)
        with pytest.raises(RegionError):
            sum_k_nu0(0.5, 6.3)


class TestIntegerOrder:
    def test_average_vs_direct(self):
        for nu in (1.0, 2.0):
            r = sum_k_integer_nu(KParams(0.3, 1.0, nu))
            d = sum_k_direct(KParams(0.3, 1.0, nu), 1e-12)
            assert r.value == pytest.approx(d.value, rel=1e-6)
            # the pole-cancelled average is much better than the gate
            assert abs(r.value / d.value - 1.0) < 1e-7


class TestExpSum:
    def test_logarithm_collapse(self):
        for alpha in (0.5, 1.0, 3.0):
            assert exp_sum_int(1, alpha) == pytest.approx(
                -math.log(-math.expm1(-alpha)), rel=1e-12)

    def test_vs_direct(self):
        for w, alpha in ((2, 0.5), (3, 1.0)):
            ref = sum(n ** float(-w) * math.exp(-alpha * n)
                      for n in range(1, 4000))
            assert exp_sum_int(w, alpha) == pytest.approx(ref, rel=1e-12)

    def test_region_and_capacity(self):
        with pytest.raises(RegionError):
            exp_sum_int(2, 6.3)
        with pytest.raises(CapacityError):
            exp_sum_int(21, 1.0)


class TestHalfInteger:
    def test_simplest_case_log_form(self):
        for a, b in ((0.5, 1.0), (0.0, 0.8)):
            r = sum_k_half_integer(0, a, b)
            assert r.value == pytest.approx(log_oracle(a, b), rel=1e-12)

    def test_polynomial_weights_order_three_halves(self):
        # c_0(1) = c_1(1) = 1: direct check through the reduced sum
        a, b = 0.3, 1.0
        alpha = a + b
        ref = 2.0 * SQRT_PI / b ** 2 * (exp_sum_int(2, alpha)
                                        + exp_sum_int(3, alpha) / b)
        assert sum_k_half_integer(1, a, b).value == pytest.approx(ref,
                                                                  rel=1e-14)

    def test_vs_direct(self):
        for m in range(4):
            r = sum_k_half_integer(m, 0.3, 1.0)
            d = sum_k_direct(KParams(0.3, 1.0, m + 0.5), 1e-12)
            assert r.value == pytest.approx(d.value, rel=1e-10)

    def test_fallback_beyond_expansion_radius(self):
        r = sum_k_half_integer(1, 3.0, 4.0)  # a+b = 7 > 2*pi
        d = sum_k_direct(KParams(3.0, 4.0, 1.5), 1e-13)
        assert r.value == pytest.approx(d.value, rel=1e-11)


class TestAlternating:
    def test_vs_term_by_term(self):
        a, b = 0.2, 0.8
        alt = sum_k_alternating(KParams(a, b, 0.5), Method.SPECIAL)
        ref = 0.0
        for n in range(1, 300):
            t = math.exp(-a * n) * SQRT_PI * math.exp(-b * n) / (b * n)
            ref += t if n % 2 else -t
        assert alt.value == pytest.approx(ref, rel=1e-11)

    def test_two_term_identity(self):
        for a, b, nu in ((0.2, 0.8, 0.5), (0.4, 1.0, 0.3)):
            m = Method.SPECIAL if nu == 0.5 else Method.THEOREM
            alt = sum_k_alternating(KParams(a, b, nu), m)
            s1 = sum_k_direct(KParams(a, b, nu), 1e-13)
            s2 = sum_k_direct(KParams(2 * a, 2 * b, nu), 1e-13)
            assert abs(alt.value + 2.0 * s2.value - s1.value) <= \
                1e-12 * (1.0 + abs(s1.value))

    def test_doubled_frequency_forces_direct(self):
        a, b, nu = 0.1, 3.2, 0.25
        with pytest.raises(RegionError):
            sum_k_alternating(KParams(a, b, nu), Method.THEOREM)
        alt = sum_k_alternating(KParams(a, b, nu), Method.DIRECT, 1e-12)
        ref = 0.0
        for n in range(1, 200):
            t = math.exp(-a * n) * bessel_k_scaled(nu, b * n)
            ref += t if n % 2 else -t
        assert alt.value == pytest.approx(ref, rel=1e-9)


class TestOrderHalfEverywhere:
    def test_all_applicable_methods_match_log_form(self):
        for a, b in ((0.2, 1.0), (1.0, 2.0)):
            ref = log_oracle(a, b)
            d = sum_k_direct(KParams(a, b, 0.5), 1e-12)
            h = sum_k_half_integer(0, a, b)
            assert d.value == pytest.approx(ref, rel=1e-11)
            assert h.value == pytest.approx(ref, rel=1e-11)
