"""Scalar special functions: Gamma, digamma, Riemann zeta and its
derivative, Bernoulli numbers.

Everything here is double precision, real argument, and self-contained;
no third-party libraries.  These routines back every series expansion in
the package, so their accuracy targets are a digit or two tighter than
the sums built on top of them:

* ``gamma``           relative error <= 1e-13 on [-170, 170] away from poles
* ``digamma``         relative error <= 1e-12
* ``zeta``            relative error <= 1e-12 for every real s != 1
* ``zeta_prime_neg_int``  relative error <= 1e-10

Zeta is computed by Euler-Maclaurin summation for s > 1, by a
globally convergent alternating series for 0 <= s < 1, and through the
functional equation for s < 0 (which makes the trivial zeros exact).
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import CapacityError, PoleError

EULER_GAMMA = 0.5772156649015328606
LN_2PI = 1.8378770664093454836
SQRT_PI = 1.7724538509055160273
TWO_PI = 2.0 * math.pi

_GAMMA_ARG_CAP = 170.0
_BERNOULLI_CAP = 64  # even-index entries B_2 .. B_128


def sinpi(x: float) -> float:
    """sin(pi*x), exact at integers and half-integers."""
    if x != x or math.isinf(x):
        raise PoleError(f"sin(pi*x) undefined for x={x}")
    n = round(x)
    d = x - n  # exact: |d| <= 0.5 and x, n share scale
    if d == 0.0:
        return 0.0
    s = math.sin(math.pi * d)
    return s if n % 2 == 0 else -s


def cospi(x: float) -> float:
    """cos(pi*x), exact at half-integers."""
    n = round(x)
    d = x - n
    if abs(d) == 0.5:
        return 0.0
    c = math.cos(math.pi * d)
    return c if n % 2 == 0 else -c


# Lanczos approximation, g = 7, 9 coefficients (~15 correct digits).
_LANCZOS_G = 7.0
_LANCZOS_C = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def _lanczos_sum(z: float) -> float:
    # z >= 0.5 assumed (shifted by caller)
    acc = _LANCZOS_C[0]
    for k in range(1, len(_LANCZOS_C)):
        acc += _LANCZOS_C[k] / (z + k - 1.0)
    return acc


def _check_gamma_arg(x: float) -> None:
    if x <= 0.0 and x == math.floor(x):
        raise PoleError(f"gamma pole at x={x}")
    if abs(x) > _GAMMA_ARG_CAP:
        raise CapacityError(
            f"|x|={abs(x)} exceeds the {_GAMMA_ARG_CAP} direct-evaluation bound;"
            " use lgamma_signed instead"
        )


def gamma(x: float) -> float:
    """Gamma function for real x, poles excluded."""
    _check_gamma_arg(x)
    if x < 0.5:
        # reflection keeps the Lanczos argument in [0.5, inf)
        return math.pi / (sinpi(x) * gamma(1.0 - x))
    if x > 140.0:
        # the product form overflows in t**(z+0.5) before Gamma itself does
        return math.exp(lgamma_signed(x)[0])
    z = x - 1.0
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * math.exp(-t) * _lanczos_sum(x)


def lgamma_signed(x: float) -> tuple[float, float]:
    """(log|Gamma(x)|, sign of Gamma(x)); works far beyond the gamma() cap."""
    if x <= 0.0 and x == math.floor(x):
        raise PoleError(f"gamma pole at x={x}")
    if x < 0.5:
        s = sinpi(x)
        lg, _ = lgamma_signed(1.0 - x)
        return math.log(math.pi) - math.log(abs(s)) - lg, math.copysign(1.0, s)
    z = x - 1.0
    t = z + _LANCZOS_G + 0.5
    val = 0.5 * math.log(2.0 * math.pi) + (z + 0.5) * math.log(t) - t
    return val + math.log(_lanczos_sum(x)), 1.0


def rgamma(x: float) -> float:
    """1/Gamma(x) as an entire function: returns 0.0 at the poles of Gamma."""
    if x <= 0.0 and x == math.floor(x):
        return 0.0
    lg, sign = lgamma_signed(x)
    if lg > 709.0:
        return 0.0
    return sign * math.exp(-lg)


# --- Bernoulli numbers --------------------------------------------------

def _build_bernoulli(n_even: int) -> tuple[Fraction, ...]:
    # B_0 .. B_{2*n_even} by the defining recurrence, exact rationals
    top = 2 * n_even
    bs: list[Fraction] = [Fraction(1)]
    for m in range(1, top + 1):
        acc = Fraction(0)
        binom = 1
        for j in range(m):
            acc += binom * bs[j]
            binom = binom * (m + 1 - j) // (j + 1)
        bs.append(-acc / (m + 1))
    return tuple(bs)


_BERNOULLI_FRAC = _build_bernoulli(_BERNOULLI_CAP)
_BERNOULLI = tuple(float(b) for b in _BERNOULLI_FRAC)


def bernoulli(k: int) -> float:
    """Bernoulli number B_k (B_1 = -1/2 convention)."""
    if k < 0:
        raise PoleError("Bernoulli numbers need k >= 0")
    if k > 2 * _BERNOULLI_CAP:
        raise CapacityError(f"Bernoulli table capped at B_{2 * _BERNOULLI_CAP}")
    return _BERNOULLI[k]


class ZetaCache:
    """Immutable table of zeta(2m) built from the Bernoulli numbers.

    zeta(2m) = (2*pi)^(2m) |B_2m| / (2 (2m)!).  Indices above the cap are
    1.0 to double precision and are served without a table entry.
    """

    __slots__ = ("even_values", "cap")

    def __init__(self, cap: int = _BERNOULLI_CAP):
        if cap > _BERNOULLI_CAP:
            raise CapacityError(f"zeta cache cap {cap} exceeds Bernoulli table")
        vals = [0.0]  # index 0 unused (zeta(0) handled by zeta())
        fact = Fraction(1)
        for m in range(1, cap + 1):
            fact *= (2 * m) * (2 * m - 1)
            ratio = abs(_BERNOULLI_FRAC[2 * m]) / (2 * fact)
            vals.append(TWO_PI ** (2 * m) * float(ratio))
        self.even_values = tuple(vals)
        self.cap = cap

    def even(self, m: int) -> float:
        """zeta(2m) for m >= 1."""
        if m <= 0:
            raise PoleError("even-zeta table starts at zeta(2)")
        if m <= self.cap:
            return self.even_values[m]
        return 1.0  # zeta(2m) - 1 < 2^-128 beyond the cap


ZETA_EVEN = ZetaCache()


# --- Riemann zeta -------------------------------------------------------

# Borwein's alternating-series algorithm, fixed n = 40: the error bound
# 3/(3+sqrt(8))^n is ~1e-31, far below double precision.
_BORWEIN_N = 40


def _build_borwein() -> tuple[float, ...]:
    n = _BORWEIN_N
    ds: list[Fraction] = []
    term = Fraction(1, n)  # (n+j-1)! 4^j / ((n-j)! (2j)!)
    acc = Fraction(0)
    for j in range(n + 1):
        if j > 0:
            term *= Fraction((n + j - 1) * (n - j + 1) * 4, (2 * j) * (2 * j - 1))
        acc += term
        ds.append(n * acc)
    dn = ds[n]
    return tuple(float((dk - dn) / dn) for dk in ds[:n])


_BORWEIN_W = _build_borwein()

_EM_N = 18  # Euler-Maclaurin split point
_EM_JMAX = 30


def _zeta_em(s: float) -> float:
    # Euler-Maclaurin for s > 1
    if s >= 30.0:
        return sum(n ** -s for n in range(14, 0, -1))
    acc = sum(n ** -s for n in range(_EM_N - 1, 0, -1))
    acc += _EM_N ** (1.0 - s) / (s - 1.0)
    acc += 0.5 * _EM_N ** -s
    poch = s  # s(s+1)...(s+2j-2), started at j=1
    npow = _EM_N ** (-s - 1.0)
    for j in range(1, _EM_JMAX + 1):
        term = _BERNOULLI[2 * j] / math.factorial(2 * j) * poch * npow
        acc += term
        if abs(term) < 1e-18 * abs(acc):
            break
        poch *= (s + 2 * j - 1) * (s + 2 * j)
        npow /= _EM_N * _EM_N
    return acc


def _zeta_borwein(s: float) -> float:
    # globally convergent on 0 <= s < 1
    acc = 0.0
    sign = 1.0
    for k in range(_BORWEIN_N):
        acc += sign * _BORWEIN_W[k] * (k + 1.0) ** -s
        sign = -sign
    return -acc / (1.0 - 2.0 ** (1.0 - s))


def zeta(s: float) -> float:
    """Riemann zeta for real s != 1."""
    if s == 1.0:
        raise PoleError("zeta has a pole at s=1")
    if s > 1.0:
        return _zeta_em(s)
    if s >= 0.0:
        return _zeta_borwein(s)
    if s == math.floor(s) and (int(-s) % 2 == 0):
        return 0.0  # trivial zeros
    t = 1.0 - s
    zt = _zeta_em(t)
    sp = sinpi(0.5 * s)
    if t <= _GAMMA_ARG_CAP:
        return 2.0 ** s * math.pi ** (s - 1.0) * sp * gamma(t) * zt
    lg, _ = lgamma_signed(t)
    ln_mag = s * math.log(2.0) + (s - 1.0) * math.log(math.pi) \
        + math.log(abs(sp)) + lg + math.log(zt)
    if ln_mag > 709.0:
        raise CapacityError(f"zeta({s}) exceeds double-precision range")
    return math.copysign(math.exp(ln_mag), sp)


def zeta_ln_signed(s: float) -> tuple[float, float]:
    """(log|zeta(s)|, sign), finite for deeply negative s where zeta
    itself overflows a double.  Trivial zeros return (-inf, 0)."""
    if s == 1.0:
        raise PoleError("zeta has a pole at s=1")
    if s >= 0.0:
        z = zeta(s)
        if z == 0.0:
            return -math.inf, 0.0
        return math.log(abs(z)), math.copysign(1.0, z)
    if s == math.floor(s) and (int(-s) % 2 == 0):
        return -math.inf, 0.0
    t = 1.0 - s
    sp = sinpi(0.5 * s)
    lg, _ = lgamma_signed(t)
    ln_mag = s * math.log(2.0) + (s - 1.0) * math.log(math.pi) \
        + math.log(abs(sp)) + lg + math.log(_zeta_em(t))
    return ln_mag, math.copysign(1.0, sp)


def zeta_near_one(u: float) -> float:
    """zeta(1+u) - 1/u, analytic through u = 0 (value EULER_GAMMA there)."""
    if abs(u) > 0.5:
        return zeta(1.0 + u) - 1.0 / u
    s = 1.0 + u
    acc = sum(n ** -s for n in range(_EM_N - 1, 0, -1))
    ln_n = math.log(_EM_N)
    # (N^(1-s) - 1)/(s - 1) without the cancellation at s = 1
    acc += math.expm1(-u * ln_n) / u if u != 0.0 else -ln_n
    acc += 0.5 * _EM_N ** -s
    poch = s
    npow = _EM_N ** (-s - 1.0)
    for j in range(1, _EM_JMAX + 1):
        term = _BERNOULLI[2 * j] / math.factorial(2 * j) * poch * npow
        acc += term
        if abs(term) < 1e-18 * abs(acc):
            break
        poch *= (s + 2 * j - 1) * (s + 2 * j)
        npow /= _EM_N * _EM_N
    return acc


def _zeta_prime_pos(s: float) -> float:
    # d/ds zeta(s) for s > 1, term-differentiated Euler-Maclaurin
    if s >= 30.0:
        return -sum(math.log(n) * n ** -s for n in range(14, 1, -1))
    acc = -sum(math.log(n) * n ** -s for n in range(_EM_N - 1, 1, -1))
    ln_n = math.log(_EM_N)
    acc += _EM_N ** (1.0 - s) * (-ln_n / (s - 1.0) - 1.0 / (s - 1.0) ** 2)
    acc += -0.5 * ln_n * _EM_N ** -s
    poch = s
    dig_lo = digamma(s)
    npow = _EM_N ** (-s - 1.0)
    for j in range(1, _EM_JMAX + 1):
        dpoch = digamma(s + 2 * j - 1) - dig_lo
        term = _BERNOULLI[2 * j] / math.factorial(2 * j) * poch * npow * (dpoch - ln_n)
        acc += term
        if abs(term) < 1e-18 * abs(acc):
            break
        poch *= (s + 2 * j - 1) * (s + 2 * j)
        npow /= _EM_N * _EM_N
    return acc


def zeta_prime_neg_int(k: int) -> float:
    """zeta'(-k) for integer k >= 0.

    Even k uses the closed relation to zeta at odd positive integers;
    odd k differentiates the functional equation, which needs zeta and
    zeta' at 1+k only.
    """
    if k < 0:
        raise PoleError("zeta_prime_neg_int needs k >= 0")
    if k == 0:
        return -0.5 * LN_2PI
    if k % 2 == 0:
        m = k // 2
        lg, _ = lgamma_signed(2.0 * m + 1.0)
        ln_mag = lg + math.log(zeta(2.0 * m + 1.0)) - math.log(2.0) - 2.0 * m * LN_2PI
        if ln_mag > 709.0:
            raise CapacityError(f"zeta'(-{k}) exceeds double-precision range")
        return (-1.0) ** m * math.exp(ln_mag)
    t = 1.0 + k
    bracket = zeta(t) * (LN_2PI - digamma(t)) - _zeta_prime_pos(t)
    lg, _ = lgamma_signed(t)
    ln_pref = -k * math.log(2.0) - t * math.log(math.pi) + lg
    sign = -1.0 if ((k + 1) // 2) % 2 else 1.0
    if ln_pref + math.log(abs(bracket) + 5e-324) > 709.0:
        raise CapacityError(f"zeta'(-{k}) exceeds double-precision range")
    return sign * math.exp(ln_pref) * bracket


# --- digamma ------------------------------------------------------------

_PSI_TAIL = tuple(
    float(_BERNOULLI_FRAC[2 * j] / (2 * j)) for j in range(1, 11)
)


def digamma(x: float) -> float:
    """Logarithmic derivative of Gamma for real x, poles excluded."""
    if x <= 0.0 and x == math.floor(x):
        raise PoleError(f"digamma pole at x={x}")
    if x < 0.5:
        # psi(x) = psi(1-x) - pi*cot(pi*x)
        return digamma(1.0 - x) - math.pi * cospi(x) / sinpi(x)
    acc = 0.0
    while x < 10.0:
        acc -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    tail = 0.0
    p = inv2
    for c in _PSI_TAIL:
        term = c * p
        tail -= term
        if abs(term) < 1e-18:
            break
        p *= inv2
    return acc + math.log(x) - 0.5 / x + tail
