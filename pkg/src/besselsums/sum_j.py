"""Evaluation paths for S_J(a, b, v) = sum_{n>=1} e^{-an} (bn/2)^-v J_v(bn).

Five routes, each valid in its own parameter region:

* direct        literal summation, any a > 0 (the reference oracle)
* polylog       even-order polylogarithm series, a >= b
* theorem1      closed kernel terms plus a double coefficient sum in
                (a/2pi, b/2pi); a <= b < 2pi
* theorem2      the same expansion rearranged into a single series in
                odd powers of a/2pi with cached coefficients, so an
                a-sweep costs O(terms) per point; a <= b < 2pi
* a = 0         two-term closed form, 0 < b < 2pi

The alternating variant is the corrected two-term identity
alt(a,b) = S(a,b) - 2 S(2a,2b): the even-n terms of S(a,b) are exactly
S(2a,2b) and the alternating sum removes them twice.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

from .accel import euler_alternating
from .errors import CapacityError, DomainError, RegionError
from .hyp2f1 import hyp2f1_special_count
from .polylog import polylog_neg_int_scaled
from .results import (CONDITIONAL_CONVERGENCE, MAX_TERMS_CAPPED, NEAR_BOUNDARY,
                      TOL_NOT_MET, EvalResult, Method)
from .special import ZETA_EVEN, gamma, lgamma_signed, rgamma
from .bessel import bessel_j_scaled

TWO_PI = 2.0 * math.pi
_TABLE_M = 48
_COEFF_CAP = 60
_SWEEP_EPS = 1e-17
_EULER_RATIO = 0.9  # a/b above which alternating tails get accelerated
_EULER_RAW = 20
_EULER_TAIL = 64


@dataclass(frozen=True)
class JParams:
    """Damping a >= 0, frequency b > 0, order nu > -1/2."""

    a: float
    b: float
    nu: float

    def __post_init__(self) -> None:
        if not (self.a >= 0.0):
            raise DomainError(f"damping a must be >= 0, got {self.a}")
        if not (self.b > 0.0):
            raise DomainError(f"frequency b must be > 0, got {self.b}")
        if not (self.nu > -0.5):
            raise DomainError(f"order nu must exceed -1/2, got {self.nu}")

    def doubled(self) -> "JParams":
        return JParams(2.0 * self.a, 2.0 * self.b, self.nu)


def coeff_a(m: int, n: int, nu: float) -> float:
    """Double-sum coefficient
    Gamma(m+n+1) Gamma(m+n+3/2) zeta(2m+2n+2) / (m! n! Gamma(m+3/2) Gamma(n+1+nu)).
    """
    if m < 0 or n < 0:
        raise DomainError("coefficient indices must be nonnegative")
    if m > _COEFF_CAP or n > _COEFF_CAP:
        raise CapacityError(f"coefficient indices capped at {_COEFF_CAP}")
    if not nu > -0.5:
        raise DomainError(f"order nu must exceed -1/2, got {nu}")
    ln = (lgamma_signed(m + n + 1.0)[0] + lgamma_signed(m + n + 1.5)[0]
          - lgamma_signed(m + 1.0)[0] - lgamma_signed(n + 1.0)[0]
          - lgamma_signed(m + 1.5)[0] - lgamma_signed(n + 1.0 + nu)[0])
    return math.exp(ln) * ZETA_EVEN.even(m + n + 1)


_A_CACHE: dict[float, tuple[tuple[float, ...], ...]] = {}
_TABLE_CACHE: dict[tuple[float, float], "JCoeffTable"] = {}
_cache_lock = threading.Lock()


def _a_table(nu: float) -> tuple[tuple[float, ...], ...]:
    with _cache_lock:
        hit = _A_CACHE.get(nu)
    if hit is not None:
        return hit
    rows = tuple(
        tuple(coeff_a(m, n, nu) for n in range(_TABLE_M + 1))
        for m in range(_TABLE_M + 1)
    )
    with _cache_lock:
        _A_CACHE[nu] = rows
    return rows


def _c_sum(k: int, b: float, nu: float, row: tuple[float, ...]) -> tuple[float, int]:
    # C_k = sum_n A_{k,n} (b/2pi)^(2n); the n-tail past the stored row is
    # continued with the exact term ratio so the 1e-16 cutoff is honest
    # for b close to 2pi.
    if b >= TWO_PI:
        from .errors import DivergenceError

        raise DivergenceError(
            f"coefficient series diverges for b={b} >= 2*pi", ("direct", "polylog"))
    r2 = (b / TWO_PI) ** 2
    total = 0.0
    term = 0.0
    w = 1.0
    for n in range(_TABLE_M + 1):
        term = row[n] * w
        total += term
        w *= r2
        if term < 1e-17 * total:
            return total, n + 1
    # continue by ratio beyond the stored table
    n = _TABLE_M
    a_mn = row[_TABLE_M]
    w = r2 ** _TABLE_M
    while n < 4000:
        ratio = ((k + n + 1.0) * (k + n + 1.5)
                 / ((n + 1.0) * (n + 1.0 + nu))
                 * (ZETA_EVEN.even(k + n + 2) / ZETA_EVEN.even(k + n + 1)))
        a_mn *= ratio
        n += 1
        w *= r2
        term = a_mn * w
        total += term
        if term < 1e-17 * total:
            return total, n + 1
    raise CapacityError(f"C_{k} series exceeded the term cap at b={b}")


class JCoeffTable:
    """Cached A_{m,n} rectangle for one order plus the C_k vector for one
    (order, frequency) pair.  Immutable once built; safe to share."""

    __slots__ = ("nu", "b", "M", "A", "C", "C_alt", "c_terms")

    def __init__(self, nu: float, b: float):
        self.nu = nu
        self.b = b
        self.M = _TABLE_M
        self.A = _a_table(nu)
        cs = []
        alts = []
        terms = 0
        r2 = (b / TWO_PI) ** 2
        for k in range(_TABLE_M + 1):
            ck, used = _c_sum(k, b, nu, self.A[k])
            cs.append(ck)
            terms += used
            # alternating-sign variant, used by the K-sum D coefficients
            alt = 0.0
            w = 1.0
            for n in range(_TABLE_M + 1):
                t = self.A[k][n] * w
                alt += t if n % 2 == 0 else -t
                w *= r2
                if abs(t) < 1e-17 * abs(alt):
                    break
            alts.append(alt)
        self.C = tuple(cs)
        self.C_alt = tuple(alts)
        self.c_terms = terms


def coeff_table(nu: float, b: float) -> JCoeffTable:
    key = (nu, b)
    with _cache_lock:
        hit = _TABLE_CACHE.get(key)
    if hit is not None:
        return hit
    table = JCoeffTable(nu, b)
    with _cache_lock:
        _TABLE_CACHE[key] = table
    return table


def coeff_c(k: int, b: float, nu: float) -> float:
    """C_k = sum_n A_{k,n} (b/2pi)^(2n), the a-independent theorem2 weight."""
    val, _ = coeff_c_count(k, b, nu)
    return val


def coeff_c_count(k: int, b: float, nu: float) -> tuple[float, int]:
    if k > _TABLE_M:
        raise CapacityError(f"C_k cached up to k={_TABLE_M}")
    return _c_sum(k, b, nu, _a_table(nu)[k])


# --- kernel terms shared by both theorem forms ---------------------------

def t2_j(a: float, b: float, nu: float, form: str = "closed") -> float:
    """Residue kernel of the theorem expansions.

    closed: sqrt(pi)/(b Gamma(v+1/2)) (1+a^2/b^2)^(v-1/2)
            - 2a/(b^2 Gamma(v)) 2F1(1, 1-v; 3/2; -a^2/b^2)
    series: (1/b) sum_k (-)^k Gamma((k+1)/2) (2a/b)^k / (k! Gamma(1/2+v-k/2))
    """
    val, _ = _t2_j_count(a, b, nu, form)
    return val


def _t2_j_count(a: float, b: float, nu: float, form: str) -> tuple[float, int]:
    if a > b:
        raise RegionError(f"kernel term needs a <= b, got a={a} > b={b}",
                          ("polylog", "direct"))
    if form == "closed":
        z = -(a * a) / (b * b)
        lead = math.sqrt(math.pi) / (b * gamma(nu + 0.5)) \
            * (1.0 + (a / b) ** 2) ** (nu - 0.5)
        if a == 0.0:
            return lead, 1
        f, n2f1 = hyp2f1_special_count(nu, z)
        return lead - 2.0 * a / (b * b) * rgamma(nu) * f, n2f1 + 1
    if form != "series":
        raise DomainError(f"unknown kernel form {form!r}")
    # series form, log-space terms with sign tracking
    if a == 0.0:
        return math.sqrt(math.pi) / (b * gamma(nu + 0.5)), 1

    def term(k: int) -> float:
        arg = 0.5 + nu - 0.5 * k
        rg = rgamma(arg)
        if rg == 0.0:
            return 0.0
        ln = (lgamma_signed(0.5 * k + 0.5)[0] - lgamma_signed(k + 1.0)[0]
              + k * math.log(2.0 * a / b) + math.log(abs(rg)))
        val = math.copysign(math.exp(ln), rg)
        return val if k % 2 == 0 else -val

    if a / b <= _EULER_RATIO:
        total = 0.0
        small = 0
        k = 0
        while True:
            t = term(k)
            total += t
            small = small + 1 if abs(t) < _SWEEP_EPS * abs(total) else 0
            if small >= 2 and k >= 2:
                return total / b, k + 1
            k += 1
            if k > 4000:
                raise CapacityError("kernel series exceeded the term cap")
    total = sum(term(k) for k in range(_EULER_RAW))
    tail, _ = euler_alternating([term(k) for k in range(_EULER_RAW,
                                                        _EULER_RAW + _EULER_TAIL)])
    return (total + tail) / b, _EULER_RAW + _EULER_TAIL


# --- the five evaluation routes ------------------------------------------

def sum_j_direct(p: JParams, tol: float = 1e-12,
                 max_terms: int | None = None,
                 level: int | None = None) -> EvalResult:
    """Literal summation with an explicit geometric tail bound."""
    a, b, nu = p.a, p.b, p.nu
    if a <= 0.0:
        raise DomainError("direct summation needs a > 0 (a = 0 has its own form)")
    if tol < 1e-14:
        raise DomainError("direct-summation tolerance floor is 1e-14")
    env = 1.0 / gamma(1.0 + nu)
    if nu < 0.0:
        env = max(env, math.sqrt(2.0 / math.pi) * 0.5 ** nu * b ** (-nu - 0.5))
    n_terms = math.ceil(math.log(env / ((math.exp(a) - 1.0) * tol)) / a)
    n_terms = max(n_terms, 1)
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
        total += damp * bessel_j_scaled(nu, b * n)
    tail = env * math.exp(-a * (n_terms + 1)) / -math.expm1(-a)
    if tail > tol:
        flags.add(TOL_NOT_MET)
    return EvalResult(total, tail, n_terms, Method.DIRECT, frozenset(flags))


def sum_j_polylog(p: JParams, level: int | None = None) -> EvalResult:
    """Even-order polylogarithm series; valid for a >= b."""
    a, b, nu = p.a, p.b, p.nu
    if a < b:
        raise RegionError(
            f"polylog series diverges for a={a} < b={b}",
            ("theorem", "asymptotic", "direct"))

    ln_ba = math.log(0.5 * b)

    def term(k: int) -> float:
        scaled = polylog_neg_int_scaled(2 * k, a)
        ln = (2 * k * ln_ba + lgamma_signed(2 * k + 1.0)[0]
              - (2 * k + 1.0) * math.log(a) - lgamma_signed(k + 1.0)[0]
              - lgamma_signed(k + 1.0 + nu)[0] + math.log(scaled))
        val = math.exp(ln)
        return val if k % 2 == 0 else -val

    flags: set[str] = set()
    if level is not None:
        total = sum(term(k) for k in range(level))
        return EvalResult(total, abs(term(level)), level, Method.POLYLOG,
                          frozenset())
    if a / b <= 1.0 / _EULER_RATIO and a / b < 1.2:
        # conditional or slow geometric convergence: accelerate the tail
        if a == b:
            flags.add(CONDITIONAL_CONVERGENCE)
        total = sum(term(k) for k in range(_EULER_RAW))
        tail, est = euler_alternating(
            [term(k) for k in range(_EULER_RAW, _EULER_RAW + _EULER_TAIL)])
        return EvalResult(total + tail, est, _EULER_RAW + _EULER_TAIL,
                          Method.POLYLOG, frozenset(flags))
    total = 0.0
    small = 0
    k = 0
    while True:
        t = term(k)
        total += t
        small = small + 1 if abs(t) < 1e-16 * abs(total) else 0
        k += 1
        if small >= 2 and k >= 3:
            break
        if k > 4000:
            raise CapacityError("polylog series exceeded the term cap")
    return EvalResult(total, abs(t), k, Method.POLYLOG, frozenset(flags))


def _sweep_antidiagonals(term_fn, scale_ref: float,
                         level: int | None = None) -> tuple[float, int, float]:
    """Sum term_fn(m, n) over anti-diagonals m+n = d with a three-strike
    relative cutoff.  Returns (total, terms, err_mag).

    The rewritten double sums converge only for a + b < 2*pi (their
    coefficients grow binomially along the diagonal), so past that the
    anti-diagonal magnitudes eventually turn around.  When that happens
    the sweep rolls back to the smallest anti-diagonal (optimal
    truncation of an asymptotic tail) and reports its magnitude as the
    error scale."""
    total = 0.0
    terms = 0
    small = 0
    last = 0.0
    prev = 0.0
    min_pair = math.inf
    pair = math.inf
    best = (0.0, 0)
    top = (level - 1) if level is not None else _TABLE_M
    for d in range(min(top, _TABLE_M) + 1):
        diag = 0.0
        for m in range(d + 1):
            diag += term_fn(m, d - m)
        terms += d + 1
        total += diag
        prev, last = last, abs(diag)
        # a single anti-diagonal can vanish by symmetry, so the turnaround
        # detection works on consecutive pairs
        pair = last + prev
        if d >= 1 and pair < min_pair:
            min_pair = pair
            best = (total, terms)
        if level is None:
            if last <= _SWEEP_EPS * (abs(total) + scale_ref):
                small += 1
                if small >= 3:
                    break
            else:
                small = 0
    if level is None and pair > 3.0 * min_pair:
        total, terms = best
        return total, terms, min_pair
    return total, terms, last


def _series_with_turnaround(term_fn, level: int | None,
                            abs_floor: float) -> tuple[float, int, float]:
    """Sum signed term_fn(k) for k = 0.. with a relative cutoff, rolling
    back to the smallest consecutive pair of terms if the magnitudes turn
    around (the single-series rearrangements are asymptotic past their
    joint convergence region)."""
    total = 0.0
    terms = 0
    est = 0.0
    prev = 0.0
    min_pair = math.inf
    pair = math.inf
    best = (0.0, 0, 0.0)
    top = level if level is not None else _TABLE_M + 1
    for k in range(min(top, _TABLE_M + 1)):
        t = term_fn(k)
        total += t
        terms += 1
        est = abs(t)
        pair = abs(t) + prev
        prev = abs(t)
        if k >= 1 and pair < min_pair:
            min_pair = pair
            best = (total, terms, est)
        if level is None and abs(t) < 1e-16 * abs(total) + abs_floor:
            break
    if level is None and pair > 3.0 * min_pair:
        return best[0], best[1], min_pair
    return total, terms, est


def sum_j_theorem1(p: JParams, level: int | None = None) -> EvalResult:
    """Kernel terms plus the double coefficient sum; a <= b < 2pi."""
    a, b, nu = p.a, p.b, p.nu
    _check_theorem_region(a, b)
    t2, t2_terms = _t2_j_count(a, b, nu, "closed")
    const = -0.5 * rgamma(1.0 + nu)
    if a == 0.0:
        return EvalResult(t2 + const, 1e-16 * abs(t2 + const), 1,
                          Method.THEOREM, _boundary_flags(a, b))
    table = coeff_table(nu, b)
    ra = (a / TWO_PI) ** 2
    rb = (b / TWO_PI) ** 2

    def term(m: int, n: int) -> float:
        val = table.A[m][n] * ra ** m * rb ** n
        return val if m % 2 == 0 else -val

    dsum, terms, last = _sweep_antidiagonals(term, table.A[0][0], level)
    ratio = max(ra, rb)
    pref = a / (2.0 * math.pi ** 2)
    est = max(last * ratio / (1.0 - ratio) * pref, 5e-17 * abs(t2))
    value = t2 + const + pref * dsum
    flags = _boundary_flags(a, b)
    if a + b >= TWO_PI:
        # outside the joint convergence region: optimally truncated value,
        # error floor set by the smallest anti-diagonal
        est = max(est, last * pref * terms)
        flags = flags | {NEAR_BOUNDARY}
    return EvalResult(value, est, terms, Method.THEOREM, flags)


def sum_j_theorem2(p: JParams, level: int | None = None) -> EvalResult:
    """Single-series rearrangement with cached C_k; built for a -> 0."""
    a, b, nu = p.a, p.b, p.nu
    _check_theorem_region(a, b)
    t2, _ = _t2_j_count(a, b, nu, "closed")
    const = -0.5 * rgamma(1.0 + nu)
    if a == 0.0:
        return EvalResult(t2 + const, 1e-16 * abs(t2 + const), 1,
                          Method.ASYMPTOTIC, _boundary_flags(a, b))
    table = coeff_table(nu, b)
    w = a / TWO_PI
    base = t2 + const
    ksum, terms, est = _series_with_turnaround(
        lambda k: (table.C[k] * w ** (2 * k + 1)) * (1.0 if k % 2 == 0 else -1.0),
        level, 1e-16 * abs(base) * math.pi)
    value = base + ksum / math.pi
    flags = _boundary_flags(a, b)
    if a + b >= TWO_PI:
        flags = flags | {NEAR_BOUNDARY}
    return EvalResult(value, max(est / math.pi, 5e-17 * abs(value)), terms,
                      Method.ASYMPTOTIC, flags)


def sum_j_a0(b: float, nu: float) -> float:
    """Closed form at a = 0: sqrt(pi)/(b Gamma(v+1/2)) - 1/(2 Gamma(1+v))."""
    if not 0.0 < b < TWO_PI:
        raise RegionError(
            f"the a=0 closed form needs 0 < b < 2*pi, got b={b}", ())
    if not nu > -0.5:
        raise DomainError(f"order nu must exceed -1/2, got {nu}")
    return math.sqrt(math.pi) / (b * gamma(nu + 0.5)) - 0.5 * rgamma(1.0 + nu)


def sum_j_a0_result(b: float, nu: float) -> EvalResult:
    val = sum_j_a0(b, nu)
    return EvalResult(val, 2e-16 * abs(val), 1, Method.SPECIAL,
                      _boundary_flags(0.0, b))


def _check_theorem_region(a: float, b: float) -> None:
    if a > b:
        raise RegionError(
            f"theorem expansions need a <= b, got a={a} > b={b}",
            ("polylog", "direct"))
    if b >= TWO_PI:
        raise RegionError(
            f"theorem expansions need b < 2*pi, got b={b}", ("direct",))


def _boundary_flags(a: float, b: float) -> frozenset[str]:
    flags = set()
    if b > 0.98 * TWO_PI:
        flags.add(NEAR_BOUNDARY)
    if a == b:
        flags.add(CONDITIONAL_CONVERGENCE)
    return frozenset(flags)


_J_DISPATCH = {
    Method.DIRECT: lambda p, tol, mt: sum_j_direct(p, tol, mt),
    Method.POLYLOG: lambda p, tol, mt: sum_j_polylog(p),
    Method.THEOREM: lambda p, tol, mt: sum_j_theorem1(p),
    Method.ASYMPTOTIC: lambda p, tol, mt: sum_j_theorem2(p),
    Method.SPECIAL: lambda p, tol, mt: _a0_dispatch(p),
}


def _a0_dispatch(p: JParams) -> EvalResult:
    if p.a != 0.0:
        raise RegionError(
            f"the special-case J form is the a=0 closed form; got a={p.a}",
            ("theorem", "asymptotic", "polylog", "direct"))
    return sum_j_a0_result(p.b, p.nu)


def eval_j(p: JParams, method: Method, tol: float = 1e-10,
           max_terms: int | None = None) -> EvalResult:
    """Evaluate S_J by one named method, with its region checks."""
    return _J_DISPATCH[method](p, tol, max_terms)


def sum_j_alternating(p: JParams, method: Method, tol: float = 1e-10,
                      max_terms: int | None = None) -> EvalResult:
    """sum_n (-)^(n-1) e^{-an} (bn/2)^-v J_v(bn) = S(a,b) - 2 S(2a,2b)."""
    r1 = eval_j(p, method, tol)
    try:
        r2 = eval_j(p.doubled(), method, tol)
    except RegionError as exc:
        raise RegionError(
            f"doubled parameters leave the {method} region: {exc}",
            ("direct",)) from exc
    return EvalResult(r1.value - 2.0 * r2.value,
                      r1.est_error + 2.0 * r2.est_error,
                      r1.terms_used + r2.terms_used,
                      method, r1.region_flags | r2.region_flags)
