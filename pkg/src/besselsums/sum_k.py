"""Evaluation paths for S_K(a, b, v) = sum_{n>=1} e^{-an} (bn/2)^-v K_v(bn).

The K-sum mirrors the J-sum routes but its expansion has removable
singularities on the half-integer lattice of orders, so three extra paths
exist:

* order 0          a limiting form in zeta'(-k), psi, and an arcsin bracket
* half-integer v   the kernel collapses to damped exponentials; the sum
                   reduces to exponential integer-power sums
* integer v >= 1   the average of the main expansion at v +- 1e-4, which
                   cancels the first-order csc(pi v) pole; cross-checked
                   against direct summation

The main expansion (valid a <= b < 2pi, order away from the half-integer
lattice by more than 1e-3) carries two coefficient families: the J-sum's
A_{m,n} and the K-specific B_{m,n}.  Its single-series rearrangement uses
D coefficients assembled from both.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from functools import lru_cache

from .accel import euler_alternating
from .bessel import bessel_k_scaled
from .errors import (CapacityError, ConditioningError, DomainError,
                     RegionError, RoutingError)
from .hyp2f1 import hyp2f1_special_count
from .polylog import (polylog_neg_int_scaled, polylog_real_order,
                      polylog_real_order_ln)
from .results import (CONDITIONAL_CONVERGENCE, FALLBACK_USED, MAX_TERMS_CAPPED,
                      NEAR_BOUNDARY, TOL_NOT_MET, EvalResult, Method)
from .special import (EULER_GAMMA, digamma, gamma, lgamma_signed, rgamma,
                      sinpi, zeta, zeta_near_one, zeta_prime_neg_int)
from .sum_j import (JParams, _a_table, _series_with_turnaround,
                    _sweep_antidiagonals, coeff_table)

TWO_PI = 2.0 * math.pi
_TABLE_M = 48
_COEFF_CAP = 60
NU_GUARD = 1e-3  # distance from the half-integer lattice for the main path
_EPS_AVG = 1e-4  # offset for the integer-order average
_CLOSED_FORM_RATIO = 0.9
_EULER_RAW = 20
_EULER_TAIL = 64

_zeta_prime = lru_cache(maxsize=1024)(zeta_prime_neg_int)


@dataclass(frozen=True)
class KParams:
    """Damping a >= 0, frequency b > 0, order nu >= 0."""

    a: float
    b: float
    nu: float

    def __post_init__(self) -> None:
        if not (self.a >= 0.0):
            raise DomainError(f"damping a must be >= 0, got {self.a}")
        if not (self.b > 0.0):
            raise DomainError(f"frequency b must be > 0, got {self.b}")
        if not (self.nu >= 0.0):
            raise DomainError(f"order nu must be >= 0, got {self.nu}")

    def doubled(self) -> "KParams":
        return KParams(2.0 * self.a, 2.0 * self.b, self.nu)


def lattice_distance(nu: float) -> float:
    """Distance from nu to the nearest half-integer (0, 1/2, 1, ...)."""
    return abs(2.0 * nu - round(2.0 * nu)) / 2.0


def _lattice_alternatives(nu: float) -> tuple[str, ...]:
    half = round(2.0 * nu)
    if half % 2 == 1:
        return ("special (half-integer form)", "direct")
    if half == 0:
        return ("special (order-0 form)", "direct")
    return ("integer-order average", "direct")


def _check_admissible(nu: float) -> None:
    if lattice_distance(nu) <= NU_GUARD:
        raise ConditioningError(
            f"order nu={nu} is within {NU_GUARD} of the half-integer lattice,"
            " where the expansion is singular", _lattice_alternatives(nu))


def _sinc(x: float) -> float:
    if abs(x) < 0.1:
        x2 = x * x
        return 1.0 + x2 * (-1.0 / 6.0 + x2 * (1.0 / 120.0 - x2 / 5040.0))
    return math.sin(x) / x


def coeff_b(m: int, n: int, nu: float) -> float:
    """K-specific double-sum coefficient; the zeta(m+2n+1-2v) pole against
    the sin pi(m/2-v) zero is evaluated jointly when they nearly collide."""
    if m < 0 or n < 0:
        raise DomainError("coefficient indices must be nonnegative")
    if m > _COEFF_CAP or n > _COEFF_CAP:
        raise CapacityError(f"coefficient indices capped at {_COEFF_CAP}")
    u = m + 2.0 * n - 2.0 * nu  # zeta argument minus one
    if u == 0.0:
        raise ConditioningError(
            f"B coefficient hits the zeta pole exactly at m={m}, n={n}, nu={nu}")
    lg1, s1 = lgamma_signed(0.5 * m + n + 0.5 - nu)
    lg2, s2 = lgamma_signed(0.5 * m + n + 1.0 - nu)
    lgd, s3 = lgamma_signed(n + 1.0 - nu)
    ln = (lg1 + lg2
          - lgamma_signed(0.5 * m + 0.5)[0] - lgamma_signed(0.5 * m + 1.0)[0]
          - lgamma_signed(n + 1.0)[0] - lgd)
    if abs(u) < 0.05:
        zs = sinpi(0.5 * u) * zeta_near_one(u) + 0.5 * math.pi * _sinc(0.5 * math.pi * u)
        if n % 2:
            zs = -zs
    else:
        zs = zeta(u + 1.0) * sinpi(0.5 * m - nu)
    return s1 * s2 * s3 * zs * math.exp(ln)


def _cprime_sum(k: int, b: float, nu: float,
                row: tuple[float, ...]) -> tuple[float, int]:
    # C'_k = sum_n (-)^n B_{k,n} (b/2pi)^(2n-2v), continued past the table
    # by the exact term ratio
    if b >= TWO_PI:
        from .errors import DivergenceError

        raise DivergenceError(
            f"coefficient series diverges for b={b} >= 2*pi", ("direct",))
    r2 = (b / TWO_PI) ** 2
    w = (b / TWO_PI) ** (-2.0 * nu)
    total = 0.0
    for n in range(_TABLE_M + 1):
        t = row[n] * w
        total += -t if n % 2 else t
        w *= r2
        if abs(t) < 1e-17 * abs(total):
            return total, n + 1
    n = _TABLE_M
    b_kn = row[_TABLE_M]
    w = (b / TWO_PI) ** (2.0 * _TABLE_M - 2.0 * nu)
    while n < 4000:
        s_arg = k + 2 * n + 1.0 - 2.0 * nu
        ratio = ((0.5 * k + n + 0.5 - nu) * (0.5 * k + n + 1.0 - nu)
                 / ((n + 1.0) * (n + 1.0 - nu))
                 * (zeta(s_arg + 2.0) / zeta(s_arg)))
        b_kn *= ratio
        n += 1
        w *= r2
        t = b_kn * w
        total += -t if n % 2 else t
        if abs(t) < 1e-17 * abs(total):
            return total, n + 1
    raise CapacityError(f"C'_{k} series exceeded the term cap at b={b}")


_B_CACHE: dict[float, tuple[tuple[float, ...], ...]] = {}
_KTABLE_CACHE: dict[tuple[float, float], "KCoeffTable"] = {}
_lock = threading.Lock()


def _b_table(nu: float) -> tuple[tuple[float, ...], ...]:
    with _lock:
        hit = _B_CACHE.get(nu)
    if hit is not None:
        return hit
    rows = tuple(
        tuple(coeff_b(m, n, nu) for n in range(_TABLE_M + 1))
        for m in range(_TABLE_M + 1)
    )
    with _lock:
        _B_CACHE[nu] = rows
    return rows


class KCoeffTable:
    """B rectangle plus the C'_k and D_k vectors for one (order, frequency).

    D_2k = C'_2k and D_{2k+1} = C'_{2k+1} + (-)^{k-1} Ca_k, where Ca_k is
    the sign-alternating inner sum over the A row (the plain C_k of the
    J-sum rearrangement fails the resummation identity; the K residue
    series carries an extra (-1)^n on its A part)."""

    __slots__ = ("nu", "b", "M", "B", "Cprime", "D")

    def __init__(self, nu: float, b: float):
        self.nu = nu
        self.b = b
        self.M = _TABLE_M
        self.B = _b_table(nu)
        jt = coeff_table(nu, b)
        cps = []
        for k in range(_TABLE_M + 1):
            cp, _ = _cprime_sum(k, b, nu, self.B[k])
            cps.append(cp)
        self.Cprime = tuple(cps)
        ds = []
        for k in range(_TABLE_M + 1):
            if k % 2 == 0:
                ds.append(cps[k])
            else:
                j = (k - 1) // 2
                ds.append(cps[k] + (-1.0) ** (j - 1) * jt.C_alt[j])
        self.D = tuple(ds)


def k_coeff_table(nu: float, b: float) -> KCoeffTable:
    key = (nu, b)
    with _lock:
        hit = _KTABLE_CACHE.get(key)
    if hit is not None:
        return hit
    table = KCoeffTable(nu, b)
    with _lock:
        _KTABLE_CACHE[key] = table
    return table


def coeff_d(k: int, b: float, nu: float) -> float:
    """Single-series coefficient D_k of the rearranged K expansion."""
    _check_admissible(nu)
    if k > _TABLE_M:
        raise CapacityError(f"D_k cached up to k={_TABLE_M}")
    return k_coeff_table(nu, b).D[k]


def coeff_cprime(k: int, b: float, nu: float) -> float:
    _check_admissible(nu)
    if k > _TABLE_M:
        raise CapacityError(f"C'_k cached up to k={_TABLE_M}")
    return k_coeff_table(nu, b).Cprime[k]


# --- kernel terms ---------------------------------------------------------

def t2_k(a: float, b: float, nu: float, form: str = "auto") -> float:
    """Residue kernel of the K expansion.

    closed: sqrt(pi)/(2b) Gamma(1/2-v) (1-a^2/b^2)^(v-1/2)
            - (a/b^2) Gamma(1-v) 2F1(1, 1-v; 3/2; a^2/b^2)
    series: (1/(2b)) sum_k (-)^k Gamma(k/2+1/2) Gamma(k/2+1/2-v) (2a/b)^k / k!

    The closed form's two pieces individually diverge as a -> b for
    v < 1/2, so it is refused past a/b = 0.9 in favor of the series.
    """
    val, _ = _t2_k_count(a, b, nu, form)
    return val


def _t2_k_count(a: float, b: float, nu: float, form: str) -> tuple[float, int]:
    if a > b:
        raise RegionError(f"kernel term needs a <= b, got a={a} > b={b}",
                          ("polylog", "direct"))
    if form == "auto":
        form = "closed" if a <= _CLOSED_FORM_RATIO * b else "series"
    if form == "closed":
        if a > _CLOSED_FORM_RATIO * b:
            raise RoutingError(
                f"closed kernel form cancels catastrophically for a/b="
                f"{a / b:.3f} > {_CLOSED_FORM_RATIO}; use the series form")
        lead = (math.sqrt(math.pi) / (2.0 * b) * gamma(0.5 - nu)
                * (1.0 - (a / b) ** 2) ** (nu - 0.5))
        if a == 0.0:
            return lead, 1
        f, n2f1 = hyp2f1_special_count(nu, (a / b) ** 2)
        return lead - a / (b * b) * gamma(1.0 - nu) * f, n2f1 + 1
    if form != "series":
        raise DomainError(f"unknown kernel form {form!r}")
    if a == 0.0:
        return math.sqrt(math.pi) * gamma(0.5 - nu) / (2.0 * b), 1

    def term(k: int) -> float:
        lg2, s2 = lgamma_signed(0.5 * k + 0.5 - nu)
        ln = (lgamma_signed(0.5 * k + 0.5)[0] + lg2
              + k * math.log(2.0 * a / b) - lgamma_signed(k + 1.0)[0])
        val = s2 * math.exp(ln)
        return -val if k % 2 else val

    if a / b <= _CLOSED_FORM_RATIO:
        total = 0.0
        small = 0
        k = 0
        while True:
            t = term(k)
            total += t
            small = small + 1 if abs(t) < 1e-17 * abs(total) else 0
            if small >= 2 and k >= 2:
                return total / (2.0 * b), k + 1
            k += 1
            if k > 4000:
                raise CapacityError("kernel series exceeded the term cap")
    head = sum(term(k) for k in range(_EULER_RAW))
    tail, _ = euler_alternating(
        [term(k) for k in range(_EULER_RAW, _EULER_RAW + _EULER_TAIL)])
    return (head + tail) / (2.0 * b), _EULER_RAW + _EULER_TAIL


# --- evaluation routes ----------------------------------------------------

def sum_k_direct(p: KParams, tol: float = 1e-12,
                 max_terms: int | None = None,
                 level: int | None = None) -> EvalResult:
    """Literal summation; converges for every a >= 0 thanks to the
    exponential decay of the kernel itself."""
    a, b, nu = p.a, p.b, p.nu
    env = 1.0 + 1.0 / gamma(nu + 1.0)
    n_terms = math.ceil(math.log(env / tol) / (a + b)) + 10
    flags = set()
    if level is not None:
        n_terms = level
    elif max_terms is not None and n_terms > max_terms:
        n_terms = max_terms
        flags.add(MAX_TERMS_CAPPED)
    total = 0.0
    for n in range(1, n_terms + 1):
        damp = math.exp(-a * n)
        if damp == 0.0:
            break
        total += damp * bessel_k_scaled(nu, b * n)
    tail = env * math.exp(-(a + b) * (n_terms + 1)) / -math.expm1(-(a + b))
    if tail > tol:
        flags.add(TOL_NOT_MET)
    return EvalResult(total, tail, n_terms, Method.DIRECT, frozenset(flags))


def _li_pos_direct(s: float, a: float) -> float:
    # sum_n n^-s e^-an for a >= 2*pi (geometric, a handful of terms)
    total = 0.0
    n = 1
    while True:
        t = n ** -s * math.exp(-a * n)
        total += t
        n += 1
        if t < 1e-18 * total or n > 500:
            return total


def sum_k_polylog(p: KParams, level: int | None = None) -> EvalResult:
    """Two polylogarithm series tied by pi/(2 sin pi v); valid a > b."""
    a, b, nu = p.a, p.b, p.nu
    if a <= b:
        raise RegionError(
            f"K polylog series needs a > b, got a={a} <= b={b}",
            ("theorem", "asymptotic", "direct"))
    _check_admissible(nu)
    if nu == 0.0:
        raise ConditioningError("K polylog series needs sin(pi nu) != 0",
                                ("special (order-0 form)", "direct"))
    ln_b2 = math.log(0.5 * b)

    def term_minus(k: int) -> float:
        # (b/2)^(2k-2v) Li_{2v-2k}(e^-a) / (k! Gamma(1-v+k))
        s = 2.0 * nu - 2.0 * k
        if a < TWO_PI:
            ln_li = polylog_real_order_ln(s, a) if s <= -2.0 else None
            li = polylog_real_order(s, a) if ln_li is None else None
        else:
            li = _li_pos_direct(s, a)
            ln_li = None
        lgd, sd = lgamma_signed(1.0 - nu + k)
        ln = (2.0 * k - 2.0 * nu) * ln_b2 - lgamma_signed(k + 1.0)[0] - lgd
        if ln_li is None:
            return sd * li * math.exp(ln)
        return sd * math.exp(ln + ln_li)

    def term_plus(k: int) -> float:
        scaled = polylog_neg_int_scaled(2 * k, a)
        ln = (2 * k * ln_b2 + lgamma_signed(2 * k + 1.0)[0]
              - (2 * k + 1.0) * math.log(a) - lgamma_signed(k + 1.0)[0]
              - lgamma_signed(k + 1.0 + nu)[0] + math.log(scaled))
        return math.exp(ln)

    pref = 0.5 * math.pi / sinpi(nu)
    total = 0.0
    small = 0
    k = 0
    while True:
        t = term_minus(k) - term_plus(k)
        total += t
        small = small + 1 if abs(t) < 1e-16 * abs(total) else 0
        k += 1
        if level is not None:
            if k >= level:
                break
        elif small >= 2 and k >= 3:
            break
        if k > 4000:
            raise CapacityError("K polylog series exceeded the term cap")
    return EvalResult(pref * total, abs(pref * t) + 1e-16 * abs(pref * total),
                      k, Method.POLYLOG, frozenset())


def _theorem3_raw(p: KParams, level: int | None = None,
                  dk_form: bool = False) -> EvalResult:
    a, b, nu = p.a, p.b, p.nu
    _check_k_theorem_region(a, b)
    sp = sinpi(nu)
    t2, _ = _t2_k_count(a, b, nu, "auto")
    const = 0.25 * math.pi / (sp * gamma(1.0 + nu))
    flags = set(_k_boundary_flags(a, b))
    if a + b >= TWO_PI:
        flags.add(NEAR_BOUNDARY)
    if dk_form:
        table = k_coeff_table(nu, b)
        w = a / TWO_PI
        ksum, terms, est = _series_with_turnaround(
            lambda k: (table.D[k] * w ** k) * (-1.0 if k % 2 else 1.0),
            level, 1e-16)
        value = t2 + const - ksum / (2.0 * sp)
        return EvalResult(value, max(est / abs(2.0 * sp), 5e-17 * abs(value)),
                          terms, Method.ASYMPTOTIC, frozenset(flags))
    atab = _a_table(nu)
    btab = _b_table(nu)
    wa = a / TWO_PI
    wb2 = (b / TWO_PI) ** 2
    wb_nu = (b / TWO_PI) ** (-2.0 * nu)

    def term(m: int, n: int) -> float:
        val = (atab[m][n] * wa ** (2 * m + 1) * wb2 ** n
               + btab[m][n] * wa ** m * wb2 ** n * wb_nu)
        return -val if (m + n) % 2 else val

    scale = abs(btab[0][0]) * wb_nu + atab[0][0]
    dsum, terms, last = _sweep_antidiagonals(term, scale, level)
    value = t2 + const - dsum / (2.0 * sp)
    ratio = max(wa, wb2)
    pref = 1.0 / abs(2.0 * sp)
    est = max(last * pref * ratio / (1.0 - ratio), 5e-17 * abs(value))
    if a + b >= TWO_PI:
        est = max(est, last * pref * terms)
    return EvalResult(value, est, terms, Method.THEOREM, frozenset(flags))


def sum_k_theorem3(p: KParams, level: int | None = None) -> EvalResult:
    """Main K expansion (double coefficient sum); a <= b < 2pi, order off
    the half-integer lattice."""
    _check_admissible(p.nu)
    return _theorem3_raw(p, level)


def sum_k_theorem3_dk(p: KParams, level: int | None = None) -> EvalResult:
    """Single-series rearrangement of the main K expansion (D_k form)."""
    _check_admissible(p.nu)
    return _theorem3_raw(p, level, dk_form=True)


def sum_k_integer_nu(p: KParams, tol: float = 1e-10) -> EvalResult:
    """Integer order >= 1 by averaging the main expansion at nu +- 1e-4,
    which cancels the csc(pi nu) pole; cross-checked against direct
    summation and replaced by it if they disagree at 1e-6."""
    nu = round(p.nu)
    if abs(p.nu - nu) > NU_GUARD or nu < 1:
        raise DomainError(f"integer-order average needs integer nu >= 1, got {p.nu}")
    hi = _theorem3_raw(KParams(p.a, p.b, nu + _EPS_AVG))
    lo = _theorem3_raw(KParams(p.a, p.b, nu - _EPS_AVG))
    avg = 0.5 * (hi.value + lo.value)
    ref = sum_k_direct(KParams(p.a, p.b, float(nu)), min(tol, 1e-10))
    err = abs(avg - ref.value)
    if err > 1e-6 * (1.0 + abs(ref.value)):
        return ref.with_flags(FALLBACK_USED)
    est = max(err, hi.est_error, lo.est_error)
    return EvalResult(avg, est, hi.terms_used + lo.terms_used, Method.THEOREM,
                      hi.region_flags | lo.region_flags)


def sum_k_nu0(a: float, b: float, level: int | None = None) -> EvalResult:
    """Order-0 limiting form: a double series in zeta'(-k) plus an
    arcsin bracket, valid 0 <= a <= b < 2pi."""
    if not (0.0 <= a <= b):
        raise RegionError(f"order-0 form needs 0 <= a <= b, got a={a}, b={b}",
                          ("direct",))
    if b >= TWO_PI:
        raise RegionError(f"order-0 form needs b < 2*pi, got b={b}", ("direct",))
    ln_b2 = math.log(0.5 * b)
    ln_a = math.log(a) if a > 0.0 else 0.0

    def term(m: int, n: int) -> float:
        if a == 0.0 and m > 0:
            return 0.0
        kk = 2 * n + m
        zp = _zeta_prime(kk)
        zv = zeta(float(-kk)) if kk > 0 else -0.5
        bracket = zp + zv * (digamma(n + 1.0) - ln_b2)
        ln = (m * ln_a if m else 0.0) + 2 * n * ln_b2 \
            - lgamma_signed(m + 1.0)[0] - 2.0 * lgamma_signed(n + 1.0)[0]
        val = bracket * math.exp(ln)
        return -val if m % 2 else val

    dsum, terms, last = _sweep_antidiagonals(term, 1.0, level)
    x = a / b
    u = (b - a) / b
    if u == 0.0:
        bracket = 1.0 / b
    elif u < 1e-6:
        # arccos(1-u)/sqrt(2u) = 1 + u/12 + 3u^2/160 + ...
        bracket = math.sqrt(2.0) * (1.0 + u / 12.0 + 3.0 * u * u / 160.0) \
            / (b * math.sqrt(1.0 + x))
    else:
        bracket = math.acos(x) / (b * math.sqrt(u * (1.0 + x)))
    value = dsum + bracket
    est = max(last, 5e-17 * abs(value))
    flags = set()
    if b > 0.98 * TWO_PI:
        flags.add(NEAR_BOUNDARY)
    return EvalResult(value, est, terms, Method.SPECIAL, frozenset(flags))


def exp_sum_int(w: int, alpha: float) -> float:
    """sum_{n>=1} n^-w e^-(alpha n) for integer w >= 1, 0 < alpha < 2*pi.

    ((-alpha)^(w-1)/Gamma(w)) (euler_gamma - log alpha + psi(w))
    + sum'_k (-)^k zeta(w-k) alpha^k / k!, the prime omitting k = w-1.
    """
    if not 1 <= w <= 20:
        raise CapacityError(f"exponential sum supports 1 <= w <= 20, got {w}")
    if not 0.0 < alpha < TWO_PI:
        raise RegionError(
            f"exponential-sum expansion needs 0 < alpha < 2*pi, got {alpha}",
            ("direct",))
    wf = float(w)
    pref = ((-alpha) ** (w - 1) / gamma(wf)
            * (EULER_GAMMA - math.log(alpha) + digamma(wf)))
    total = pref
    term = 1.0  # alpha^k / k!
    small = 0
    k = 0
    while True:
        if k != w - 1:
            t = zeta(wf - k) * term
            if k % 2:
                t = -t
            total += t
            small = small + 1 if abs(t) < 1e-16 * abs(total) else 0
        k += 1
        term *= alpha / k
        if small >= 2 and k > w + 1:
            return total
        if k > 700:
            raise CapacityError("exponential-sum series failed to converge")


def _half_integer_w(w: int, alpha: float) -> float:
    # n^-w exponential sum by whichever route applies
    if alpha < TWO_PI and w <= 20:
        return exp_sum_int(w, alpha)
    if w == 1:
        return -math.log(-math.expm1(-alpha))
    total = 0.0
    n = 1
    while True:
        t = n ** float(-w) * math.exp(-alpha * n)
        total += t
        n += 1
        if t < 1e-17 * total or n > 200_000:
            return total


def sum_k_half_integer(m: int, a: float, b: float) -> EvalResult:
    """Half-integer order v = m + 1/2: the kernel is an exponential times
    a degree-m polynomial in 1/x, so the sum reduces to exponential
    integer-power sums with the classical polynomial weights
    c_k(m) = (m+k)! / (2^k k! (m-k)!)."""
    if m < 0:
        raise DomainError(f"half-integer index m must be >= 0, got {m}")
    if m > 12:
        raise CapacityError("half-integer reduction capped at m = 12")
    if a < 0.0 or b <= 0.0:
        raise DomainError("half-integer form needs a >= 0, b > 0")
    alpha = a + b
    total = 0.0
    for k in range(m + 1):
        ck = (math.factorial(m + k)
              / (2 ** k * math.factorial(k) * math.factorial(m - k)))
        total += ck / b ** k * _half_integer_w(m + k + 1, alpha)
    value = 2 ** m * math.sqrt(math.pi) / b ** (m + 1) * total
    return EvalResult(value, 1e-14 * abs(value) + 5e-324, m + 1, Method.SPECIAL,
                      frozenset())


def _check_k_theorem_region(a: float, b: float) -> None:
    if a > b:
        raise RegionError(
            f"the K expansion needs a <= b, got a={a} > b={b}",
            ("polylog", "direct"))
    if b >= TWO_PI:
        raise RegionError(
            f"the K expansion needs b < 2*pi, got b={b}", ("direct",))


def _k_boundary_flags(a: float, b: float) -> frozenset[str]:
    flags = set()
    if b > 0.98 * TWO_PI:
        flags.add(NEAR_BOUNDARY)
    if a == b:
        flags.add(CONDITIONAL_CONVERGENCE)
    return frozenset(flags)


def _special_dispatch(p: KParams, tol: float) -> EvalResult:
    half = round(2.0 * p.nu)
    if lattice_distance(p.nu) > NU_GUARD:
        raise RegionError(
            "the special-case K paths need order 0, a half-integer order,"
            f" or an integer order; got nu={p.nu}",
            ("theorem", "asymptotic", "polylog", "direct"))
    if half % 2 == 1:
        return sum_k_half_integer((half - 1) // 2, p.a, p.b)
    if half == 0:
        return sum_k_nu0(p.a, p.b)
    return sum_k_integer_nu(p, tol)


_K_DISPATCH = {
    Method.DIRECT: lambda p, tol, mt: sum_k_direct(p, tol, mt),
    Method.POLYLOG: lambda p, tol, mt: sum_k_polylog(p),
    Method.THEOREM: lambda p, tol, mt: sum_k_theorem3(p),
    Method.ASYMPTOTIC: lambda p, tol, mt: sum_k_theorem3_dk(p),
    Method.SPECIAL: lambda p, tol, mt: _special_dispatch(p, tol),
}


def eval_k(p: KParams, method: Method, tol: float = 1e-10,
           max_terms: int | None = None) -> EvalResult:
    """Evaluate S_K by one named method, with its region checks."""
    return _K_DISPATCH[method](p, tol, max_terms)


def sum_k_alternating(p: KParams, method: Method, tol: float = 1e-10,
                      max_terms: int | None = None) -> EvalResult:
    """sum_n (-)^(n-1) e^{-an} (bn/2)^-v K_v(bn) = S(a,b) - 2 S(2a,2b)."""
    r1 = eval_k(p, method, tol)
    try:
        r2 = eval_k(p.doubled(), method, tol)
    except RegionError as exc:
        raise RegionError(
            f"doubled parameters leave the {method} region: {exc}",
            ("direct",)) from exc
    return EvalResult(r1.value - 2.0 * r2.value,
                      r1.est_error + 2.0 * r2.est_error,
                      r1.terms_used + r2.terms_used,
                      method, r1.region_flags | r2.region_flags)
