"""Scaled Bessel kernels (x/2)^-v J_v(x) and (x/2)^-v K_v(x).

These power the direct-summation reference path, so they are built to a
tighter standard than double arithmetic alone can deliver: the ascending
series for J cancels like e^x and the I-combination behind K like e^2x.
Below the x = 25 crossover both kernels are therefore summed in
fixed-point decimal arithmetic with precision scaled to x; above it the
standard large-x asymptotic expansions take over, whose smallest term is
already below double precision there.

K at integer order is the two-point Richardson limit (eps = 1e-5) of the
non-integer combination pi (I_-v - I_v) / (2 sin pi v).
"""

from __future__ import annotations

import math
import threading
from decimal import Decimal, localcontext

from .errors import DomainError

_CROSSOVER_X = 25.0
_INT_EPS = 1e-5  # Richardson offset for integer-order K
_PREC_BUCKETS = (40, 48, 56, 64, 80, 96, 128)

_lock = threading.Lock()
_pi_cache: dict[int, Decimal] = {}
_spouge_cache: dict[int, tuple[int, tuple[Decimal, ...]]] = {}


def _bucket(prec: int) -> int:
    for p in _PREC_BUCKETS:
        if prec <= p:
            return p
    return _PREC_BUCKETS[-1]


def _dec_pi(prec: int) -> Decimal:
    """pi by Machin's formula at the given working precision."""
    with _lock:
        hit = _pi_cache.get(prec)
    if hit is not None:
        return hit
    with localcontext() as ctx:
        ctx.prec = prec + 10

        def atan_inv(n: int) -> Decimal:
            # arctan(1/n), Taylor; n >= 5 so it converges quickly
            x = Decimal(1) / n
            x2 = x * x
            total = Decimal(0)
            k = 0
            while x:
                total += x / (2 * k + 1) if k % 2 == 0 else -x / (2 * k + 1)
                x *= x2
                k += 1
                if x < Decimal(10) ** (-(prec + 8)):
                    break
            return total

        val = 16 * atan_inv(5) - 4 * atan_inv(239)
    val = +val
    with _lock:
        _pi_cache[prec] = val
    return val


def _spouge_coeffs(prec: int) -> tuple[int, tuple[Decimal, ...]]:
    """Spouge gamma coefficients sized for ~prec correct digits."""
    with _lock:
        hit = _spouge_cache.get(prec)
    if hit is not None:
        return hit
    a = int(prec / 0.79) + 3
    with localcontext() as ctx:
        ctx.prec = prec + 12
        two_pi = 2 * _dec_pi(prec + 12)
        coeffs = [two_pi.sqrt()]
        fact = Decimal(1)  # (k-1)!
        for k in range(1, a):
            ak = Decimal(a - k)
            # (-1)^(k-1) (a-k)^(k-1/2) e^(a-k) / (k-1)!
            c = ak ** (Decimal(k) - Decimal(1) / 2) * ak.exp() / fact
            coeffs.append(c if k % 2 == 1 else -c)
            fact *= k
    out = (a, tuple(+c for c in coeffs))
    with _lock:
        _spouge_cache[prec] = out
    return out


def _dec_gamma(z: Decimal, prec: int) -> Decimal:
    """Gamma(z) for real z > 0 at the given working precision (Spouge)."""
    a, coeffs = _spouge_coeffs(prec)
    with localcontext() as ctx:
        ctx.prec = prec + 12
        if z < 1:
            return +(_dec_gamma(z + 1, prec) / z)
        acc = coeffs[0]
        for k in range(1, a):
            acc += coeffs[k] / (z - 1 + k)
        t = z - 1 + a
        val = t ** (z - Decimal(1) / 2) * (-t).exp() * acc
    return +val


def _dec_sinpi(x: float, prec: int) -> Decimal:
    """sin(pi*x) in decimal; the argument is reduced in exact binary first."""
    n = round(x)
    d = x - n  # exact, |d| <= 0.5
    with localcontext() as ctx:
        ctx.prec = prec + 10
        t = Decimal(d) * _dec_pi(prec + 10)
        t2 = t * t
        total = Decimal(0)
        term = t
        k = 0
        while term:
            total += term
            k += 1
            term *= -t2 / ((2 * k) * (2 * k + 1))
            if abs(term) < Decimal(10) ** (-(prec + 8)):
                break
    total = +total
    return total if n % 2 == 0 else -total


def _kernel_prec(x: float, extra: int) -> int:
    return _bucket(30 + int(0.87 * x) + extra)


def _j_series_dec(nu: float, x: float) -> float:
    prec = _bucket(32 + int(0.44 * x))
    with localcontext() as ctx:
        ctx.prec = prec
        q = Decimal(x) * Decimal(x) / 4
        nd = Decimal(nu)
        total = Decimal(1)
        term = Decimal(1)
        k = 0
        tiny = Decimal(10) ** (-(prec - 2))
        while True:
            term *= -q / ((k + 1) * (nd + k + 1))
            total += term
            k += 1
            if abs(term) < tiny and k > x:
                break
        out = float(total)
    from .special import gamma

    return out / gamma(1.0 + nu)


def _k_combination_dec(nu: float, x: float) -> float:
    # pi/(2 sin pi v) [ (x/2)^-2v S_- / Gamma(1-v) - S_+ / Gamma(1+v) ],
    # S_+- the scaled I series; needs only Gamma(1+v) via reflection
    dist = abs(nu - round(nu))
    extra = 8
    if 0.0 < dist < 1e-2:
        extra += int(-math.log10(dist)) + 2
    prec = _kernel_prec(x, extra)
    with localcontext() as ctx:
        ctx.prec = prec
        q = Decimal(x) * Decimal(x) / 4
        nd = Decimal(nu)
        tiny = Decimal(10) ** (-(prec - 2))

        def iseries(sign: int) -> Decimal:
            total = Decimal(1)
            term = Decimal(1)
            k = 0
            while True:
                term *= q / ((k + 1) * (k + 1 + sign * nd))
                total += term
                k += 1
                if abs(term) < tiny and k > x:
                    break
            return total

        s_plus = iseries(+1)
        s_minus = iseries(-1)
        g = _dec_gamma(1 + nd, prec)
        sp = _dec_sinpi(nu, prec)
        pid = _dec_pi(prec)
        pw = (Decimal(-2) * nd * (Decimal(x) / 2).ln()).exp()
        val = pw * s_minus * g / (2 * nd) - pid * s_plus / (2 * sp * g)
    return float(val)


def _k_asymptotic(nu: float, x: float) -> float:
    # sqrt(pi/(2x)) e^-x sum_j a_j(nu)/x^j, a_j = prod_i (4v^2-(2i-1)^2)/(j! 8^j)
    u = 4.0 * nu * nu
    total = 1.0
    c = 1.0  # a_j / x^j
    j = 0
    while True:
        c_next = c * (u - (2 * j + 1) ** 2) / (8.0 * x * (j + 1))
        if abs(c_next) >= abs(c) and j > 0:
            break  # smallest term reached
        j += 1
        c = c_next
        total += c
        if abs(c) < 1e-19 * abs(total) or j > 80:
            break
    ln = -x - nu * math.log(0.5 * x) + 0.5 * (math.log(math.pi) - math.log(2.0 * x))
    if ln < -745.0:
        return 0.0
    return math.exp(ln) * total


def _j_asymptotic(nu: float, x: float) -> float:
    # J ~ sqrt(2/(pi x)) [cos(w) P - sin(w) Q], w = x - (v/2 + 1/4) pi,
    # P = sum (-1)^m a_2m/x^2m, Q = sum (-1)^m a_{2m+1}/x^{2m+1}
    u = 4.0 * nu * nu
    p = 1.0
    q = 0.0
    c = 1.0  # a_j / x^j
    j = 0
    while True:
        c_next = c * (u - (2 * j + 1) ** 2) / (8.0 * x * (j + 1))
        if abs(c_next) >= abs(c) and j > 0:
            break
        j += 1
        c = c_next
        m, odd = divmod(j, 2)
        if odd:
            q += c if m % 2 == 0 else -c
        else:
            p += c if m % 2 == 0 else -c
        if abs(c) < 1e-19 or j > 80:
            break
    omega = x - (0.5 * nu + 0.25) * math.pi
    amp = math.sqrt(2.0 / (math.pi * x))
    jval = amp * (math.cos(omega) * p - math.sin(omega) * q)
    return jval * (0.5 * x) ** -nu


def bessel_j_scaled(nu: float, x: float) -> float:
    """(x/2)^-nu J_nu(x) for nu > -1/2, x >= 0."""
    if nu <= -0.5:
        raise DomainError(f"J kernel needs nu > -1/2, got nu={nu}")
    if x < 0.0:
        raise DomainError(f"J kernel needs x >= 0, got x={x}")
    from .special import gamma

    if x == 0.0:
        return 1.0 / gamma(1.0 + nu)
    if x <= _CROSSOVER_X:
        return _j_series_dec(nu, x)
    return _j_asymptotic(nu, x)


def bessel_k_scaled(nu: float, x: float) -> float:
    """(x/2)^-nu K_nu(x) for nu >= 0, x > 0."""
    if x <= 0.0:
        raise DomainError(f"K kernel needs x > 0, got x={x}")
    if nu < 0.0:
        raise DomainError(f"K kernel needs nu >= 0, got nu={nu}")
    if x > _CROSSOVER_X:
        return _k_asymptotic(nu, x)
    if abs(nu - round(nu)) < 1e-6:
        n = float(round(nu))
        b1 = 0.5 * (_k_combination_dec(n + _INT_EPS, x)
                    + _k_combination_dec(n - _INT_EPS, x))
        b2 = 0.5 * (_k_combination_dec(n + 2 * _INT_EPS, x)
                    + _k_combination_dec(n - 2 * _INT_EPS, x))
        return (4.0 * b1 - b2) / 3.0
    return _k_combination_dec(nu, x)
