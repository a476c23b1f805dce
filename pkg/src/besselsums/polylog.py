"""Polylogarithm Li_s(e^-a) at negative integer order and at real
non-integer order.

Negative integer orders are served by three routes, picked for stability:

* n <= 3: exact rational closed forms in x = e^-a.
* n >= 4 with a not much larger than n: the trigonometric image-sum
  n! a^(-n-1) { 1 + 2 sum_k (a/sqrt(a^2+4 pi^2 k^2))^(n+1) cos[(n+1) phi_k] },
  phi_k = arctan(2 pi k / a), whose k-tail decays like (a/(2 pi k))^(n+1).
* a much larger than n: the defining series itself, which is then
  geometric; the trigonometric braces would cancel catastrophically there.

The scaled variant Li_{-n}(e^-a) * a^(n+1) / n! is exposed separately so
series over rising n can be assembled in log space without overflow.
"""

from __future__ import annotations

import math

from .errors import CapacityError, DomainError, RoutingError
from .special import gamma, lgamma_signed, zeta, zeta_ln_signed

_NEG_ORDER_CAP = 40
_COS_TAIL_EPS = 1e-17
_LARGE_A_LOG_BRACES = math.log(1e-2)


def _li_small_n(n: int, a: float) -> float:
    # Li_{-n}(e^-a) for n <= 3 via the rational closed forms
    x = math.exp(-a)
    om = -math.expm1(-a)  # 1 - e^-a without cancellation
    if n == 0:
        return x / om
    if n == 1:
        return x / (om * om)
    if n == 2:
        return x * (1.0 + x) / om ** 3
    return x * (1.0 + x * (4.0 + x)) / om ** 4


def _braces_cosine(n: int, a: float) -> float:
    # 1 + 2 sum_k (a/sqrt(a^2+(2 pi k)^2))^(n+1) cos[(n+1) arctan(2 pi k/a)]
    total = 1.0
    k = 1
    p = float(n + 1)
    while True:
        tk = 2.0 * math.pi * k
        r = a / math.hypot(a, tk)
        mag = r ** p
        if mag < _COS_TAIL_EPS:
            break
        total += 2.0 * mag * math.cos(p * math.atan2(tk, a))
        k += 1
        if k > 2_000_000:
            raise CapacityError("cosine-series tail failed to fall below cutoff")
    return total


def _braces_direct(n: int, a: float) -> float:
    # sum_j j^n e^-aj scaled by a^(n+1)/n!, for the a >> n regime
    lg = lgamma_signed(n + 1.0)[0]
    scale = (n + 1.0) * math.log(a) - lg
    total = 0.0
    j = 1
    while True:
        t = math.exp(n * math.log(j) - a * j + scale)
        total += t
        if t < 1e-18 * total or (j > 1 and t < 5e-324):
            break
        j += 1
        if j > 100_000:
            break
    return total


def polylog_neg_int_scaled(n: int, a: float) -> float:
    """Li_{-n}(e^-a) * a^(n+1) / n! -- always O(1)-representable."""
    if a <= 0.0:
        raise DomainError(f"polylog damping must be positive, got a={a}")
    if n < 0:
        raise DomainError("order index n must be >= 0")
    if n <= 3:
        lg = lgamma_signed(n + 1.0)[0]
        return _li_small_n(n, a) * math.exp((n + 1.0) * math.log(a) - lg)
    if a <= n:
        return _braces_cosine(n, a)
    log_braces = -a + (n + 1.0) * math.log(a) - lgamma_signed(n + 1.0)[0]
    if log_braces >= _LARGE_A_LOG_BRACES:
        return _braces_cosine(n, a)
    return _braces_direct(n, a)


def polylog_neg_int(n: int, a: float) -> float:
    """Li_{-n}(e^-a) for integer n in [0, 40], a > 0."""
    if not 0 <= n <= _NEG_ORDER_CAP:
        raise CapacityError(f"negative-order polylog capped at n={_NEG_ORDER_CAP}")
    if a <= 0.0:
        raise DomainError(f"polylog damping must be positive, got a={a}")
    if n <= 3:
        return _li_small_n(n, a)
    scaled = polylog_neg_int_scaled(n, a)
    ln_val = lgamma_signed(n + 1.0)[0] - (n + 1.0) * math.log(a) + math.log(scaled)
    if ln_val > 709.0:
        raise CapacityError(f"Li_(-{n})(e^-{a}) exceeds double-precision range")
    return math.exp(ln_val)


def polylog_real_order_ln(s: float, a: float) -> float:
    """log of Li_s(e^-a) for deeply negative non-integer s, 0 < a < 2*pi.

    Splits off the Gamma(1-s) a^(s-1) leading term, whose log is finite
    long after the value itself overflows, and folds the zeta series in
    as a correction ratio.
    """
    if not 0.0 < a < 2.0 * math.pi:
        raise DomainError(f"real-order polylog needs 0 < a < 2*pi, got a={a}")
    if s > -2.0:
        return math.log(polylog_real_order(s, a))
    ln_lead = lgamma_signed(1.0 - s)[0] + (s - 1.0) * math.log(a)
    ln_a = math.log(a)
    ln_fac = 0.0
    rel = 0.0
    small = 0
    for k in range(4001):
        if k:
            ln_fac += math.log(k)
        ln_z, sz = zeta_ln_signed(s - k)
        ln_r = ln_z + k * ln_a - ln_fac - ln_lead
        if sz != 0.0 and ln_r > -745.0:
            r = sz * math.exp(ln_r)
            rel += -r if k % 2 else r
            small = small + 1 if abs(r) < 1e-17 * (1.0 + abs(rel)) else 0
        else:
            small += 1
        if small >= 3 and k >= 4:
            return ln_lead + math.log1p(rel)
    raise CapacityError("real-order polylog series failed to converge")


def polylog_real_order(s: float, a: float) -> float:
    """Li_s(e^-a) for non-integer (or non-positive) real order s, 0 < a < 2*pi.

    Uses Gamma(1-s) a^(s-1) + sum_k zeta(s-k) (-a)^k / k!, truncated at
    1e-16 relative.
    """
    if not 0.0 < a < 2.0 * math.pi:
        raise DomainError(f"real-order polylog needs 0 < a < 2*pi, got a={a}")
    if s >= 1.0 and s == math.floor(s):
        raise RoutingError(
            f"positive integer order s={s} is served by the exponential-sum path"
        )
    if s == math.floor(s):
        return polylog_neg_int(int(-s), a)
    total = gamma(1.0 - s) * a ** (s - 1.0)
    ln_a = math.log(a)
    ln_fac = 0.0  # log k!
    small = 0
    for k in range(4001):
        if k:
            ln_fac += math.log(k)
        ln_z, sz = zeta_ln_signed(s - k)
        ln_t = ln_z + k * ln_a - ln_fac
        if sz != 0.0 and ln_t > -745.0:
            t = sz * math.exp(ln_t)
            total += -t if k % 2 else t
            small = small + 1 if abs(t) < 1e-16 * abs(total) else 0
        else:
            small += 1
        if small >= 3 and k >= 4:
            return total
    raise CapacityError("real-order polylog series failed to converge")
