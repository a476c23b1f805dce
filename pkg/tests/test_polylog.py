"""Polylogarithms at negative integer and real order."""

import math

import pytest

from besselsums.errors import CapacityError, DomainError, RoutingError
from besselsums.polylog import (polylog_neg_int, polylog_neg_int_scaled,
                                polylog_real_order, polylog_real_order_ln)


def li_direct_int(n: int, a: float) -> float:
    # literal sum_{j>=1} j^n e^-aj, the independent oracle
    total = 0.0
    j = 1
    while True:
        t = j ** n * math.exp(-a * j)
        total += t
        if t < 1e-18 * total and j > n / a:
            return total
        j += 1


def li_direct_real(s: float, a: float, n_terms: int = 4000) -> float:
    return sum(j ** (-s) * math.exp(-a * j) for j in range(1, n_terms))


class TestNegativeIntegerOrder:
    def test_geometric_case(self):
        for a in (0.3, 1.0, 4.0):
            assert polylog_neg_int(0, a) == pytest.approx(
                1.0 / (math.exp(a) - 1.0), rel=1e-14)

    def test_differentiated_geometric(self):
        for a in (0.3, 1.0, 4.0):
            x = math.exp(-a)
            assert polylog_neg_int(1, a) == pytest.approx(
                x / (1.0 - x) ** 2, rel=1e-14)

    def test_large_order_factorial_scale(self):
        # Li_(-n)(e^-a) approaches n! a^-(n+1) as n grows
        ratio = polylog_neg_int(12, 2.0) / (math.factorial(12) * 2.0 ** -13)
        assert 0.99 <= ratio <= 1.01

    def test_against_direct_summation(self):
        for n in range(13):
            for a in (0.5, 1.0, 2.0):
                assert polylog_neg_int(n, a) == pytest.approx(
                    li_direct_int(n, a), rel=1e-10)

    def test_deep_damping_regime(self):
        # a >> n: the trigonometric braces cancel, the direct route takes over
        for n, a in ((4, 30.0), (5, 40.0), (10, 25.0), (12, 80.0)):
            assert polylog_neg_int(n, a) == pytest.approx(
                li_direct_int(n, a), rel=1e-12)

    def test_monotone_in_damping(self):
        for n in (0, 3, 7, 15):
            vals = [polylog_neg_int(n, a) for a in (0.25, 0.5, 1.0, 2.0, 4.0)]
            assert all(x > y for x, y in zip(vals, vals[1:]))

    def test_scaled_ratio_trend(self):
        # scaled value -> 1 with the (a/(2 pi k))^(n+1) envelope; the leading
        # correction carries an oscillating cosine, so the check is an
        # envelope bound plus endpoint shrinkage rather than strict descent
        a = 2.0
        rho = a / math.hypot(a, 2.0 * math.pi)
        gaps = [abs(polylog_neg_int_scaled(n, a) - 1.0) for n in range(8, 21)]
        for n, gap in zip(range(8, 21), gaps):
            assert gap <= 2.5 * rho ** (n + 1)
        assert gaps[-1] < gaps[0]

    def test_domain_and_capacity(self):
        with pytest.raises(DomainError):
            polylog_neg_int(2, 0.0)
        with pytest.raises(DomainError):
            polylog_neg_int(2, -1.0)
        with pytest.raises(CapacityError):
            polylog_neg_int(41, 1.0)


class TestRealOrder:
    def test_continuity_to_integer_order(self):
        lhs = polylog_real_order(-1.0 + 1e-9, 0.7)
        rhs = polylog_neg_int(1, 0.7)
        assert abs(lhs / rhs - 1.0) <= 1e-6

    def test_positive_order_against_direct(self):
        assert polylog_real_order(0.5, 0.1) == pytest.approx(
            li_direct_real(0.5, 0.1), rel=1e-10)
        # 20-digit reference for the same point
        assert polylog_real_order(0.5, 0.1) == pytest.approx(
            4.1652965033465875029, rel=1e-13)

    def test_negative_order_against_direct(self):
        assert polylog_real_order(-2.5, 1.0) == pytest.approx(
            li_direct_real(-2.5, 1.0), rel=1e-10)
        assert polylog_real_order(-2.5, 1.0) == pytest.approx(
            3.326408904966345935, rel=1e-13)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            polylog_real_order(0.5, 0.0)
        with pytest.raises(DomainError):
            polylog_real_order(0.5, 6.3)

    def test_integer_order_routing(self):
        with pytest.raises(RoutingError):
            polylog_real_order(2.0, 1.0)

    def test_log_form_matches_value(self):
        for s in (-2.5, -7.3, -40.2):
            ln = polylog_real_order_ln(s, 1.0)
            assert ln == pytest.approx(math.log(polylog_real_order(s, 1.0)),
                                       rel=0, abs=1e-11)

    def test_log_form_beyond_overflow(self):
        # the value itself overflows a double here; the log must not
        ln = polylog_real_order_ln(-220.6, 1.5)
        assert ln > 709.0
        assert math.isfinite(ln)
