"""Built-in verification suite.

Each check cross-validates an evaluation path against an independent
oracle (elementary closed forms, literal summation, finite differences)
or an exact identity, at a fixed tolerance.  The quick suite trims the
grids for interactive use; the full suite is the acceptance gate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .engine import evaluate
from .results import Method
from .special import ZETA_EVEN, gamma, sinpi, zeta, zeta_prime_neg_int
from .sum_j import JParams, sum_j_a0, sum_j_direct, sum_j_theorem1, sum_j_theorem2
from .sum_k import (KParams, sum_k_direct, sum_k_half_integer, sum_k_nu0,
                    sum_k_theorem3, sum_k_theorem3_dk)

SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _rel(x: float, ref: float) -> float:
    return abs(x - ref) / max(abs(ref), 1e-300)


def _j_arctan(a: float, b: float) -> float:
    # sum e^-an sin(bn)/n = arctan(sin b / (e^a - cos b)), scaled for nu=1/2
    return 2.0 / (SQRT_PI * b) * math.atan2(math.sin(b), math.exp(a) - math.cos(b))


def _k_log(a: float, b: float) -> float:
    return -SQRT_PI / b * math.log(-math.expm1(-(a + b)))


def check_j_closed_form(quick: bool = False) -> CheckResult:
    """Every admissible method matches the order-1/2 arctan closed form."""
    a_grid = (0.01, 0.5) if quick else (0.001, 0.01, 0.1, 0.5, 1.0)
    b_grid = (1.0, 3.0) if quick else (0.5, 1.0, 2.0, 3.0)
    worst = 0.0
    at = ""
    for a in a_grid:
        for b in b_grid:
            oracle = _j_arctan(a, b)
            methods = [Method.DIRECT]
            if a >= b:
                methods.append(Method.POLYLOG)
            if a <= b:
                methods += [Method.THEOREM, Method.ASYMPTOTIC]
            for m in methods:
                r = evaluate("J", a, b, 0.5, m, tol=1e-11)
                err = _rel(r.value, oracle)
                if err > worst:
                    worst, at = err, f"{m} at (a={a}, b={b})"
    return CheckResult("j-closed-form-order-half", worst <= 1e-10,
                       f"worst rel err {worst:.2e} ({at}); bound 1e-10")


def check_k_closed_form(quick: bool = False) -> CheckResult:
    """Every admissible method matches the order-1/2 logarithm closed form."""
    a_grid = (0.01, 0.5) if quick else (0.001, 0.01, 0.1, 0.5, 1.0)
    b_grid = (1.0, 3.0) if quick else (0.5, 1.0, 2.0, 3.0)
    worst = 0.0
    at = ""
    for a in a_grid:
        for b in b_grid:
            oracle = _k_log(a, b)
            for m, r in (
                ("direct", sum_k_direct(KParams(a, b, 0.5), 1e-11)),
                ("half-integer", sum_k_half_integer(0, a, b)),
            ):
                err = _rel(r.value, oracle)
                if err > worst:
                    worst, at = err, f"{m} at (a={a}, b={b})"
    return CheckResult("k-closed-form-order-half", worst <= 1e-10,
                       f"worst rel err {worst:.2e} ({at}); bound 1e-10")


def check_j_a0_reduction(quick: bool = False) -> CheckResult:
    """The expansion at a=0 reduces exactly to the two-term closed form."""
    worst = 0.0
    for nu in (-0.25, 0.25, 0.75, 1.3):
        for b in (0.5, 1.0, 3.0):
            d = abs(sum_j_theorem1(JParams(0.0, b, nu)).value - sum_j_a0(b, nu))
            worst = max(worst, d)
    return CheckResult("j-a0-reduction", worst <= 1e-13,
                       f"worst abs diff {worst:.2e}; bound 1e-13")


def check_j_cross_method(quick: bool = False) -> CheckResult:
    """Both expansion forms agree with direct summation and each other.

    Grid points keep a + b <= 5: the rewritten double sum only converges
    for a + b < 2*pi, and the last stretch before that boundary is too
    slow for the fixed coefficient tables."""
    nus = (0.25, 1.3) if quick else (-0.25, 0.25, 0.5, 1.0, 1.3)
    bs = (1.0,) if quick else (0.5, 1.0, 2.0, 3.5)
    worst_d = worst_r = 0.0
    at = ""
    for nu in nus:
        for b in bs:
            for fa in (0.02, 0.3, 0.9, 1.0):
                a = fa * b
                if a + b > 5.0:
                    continue
                t1 = sum_j_theorem1(JParams(a, b, nu))
                t2 = sum_j_theorem2(JParams(a, b, nu))
                d = sum_j_direct(JParams(a, b, nu), 1e-11)
                err = max(_rel(t1.value, d.value), _rel(t2.value, d.value))
                if err > worst_d:
                    worst_d, at = err, f"(a={a}, b={b}, nu={nu})"
                worst_r = max(worst_r, abs(t1.value - t2.value)
                              / (1.0 + abs(t1.value)))
    ok = worst_d <= 1e-9 and worst_r <= 1e-10
    return CheckResult(
        "j-cross-method", ok,
        f"worst vs direct {worst_d:.2e} ({at}; bound 1e-9), "
        f"form-vs-form {worst_r:.2e} (bound 1e-10)")


def check_k_cross_method(quick: bool = False) -> CheckResult:
    """The K expansion (both forms) agrees with direct summation."""
    nus = (0.3, 1.3) if quick else (0.25, 0.3, 0.75, 1.3)
    bs = (1.0,) if quick else (0.5, 1.0, 2.0, 4.0)
    worst = worst_dk = 0.0
    at = ""
    for nu in nus:
        for b in bs:
            for fa in (0.0, 0.05, 0.3, 0.7, 1.0):
                a = fa * b
                if a > b or a + b > 5.0:
                    continue
                t3 = sum_k_theorem3(KParams(a, b, nu))
                dk = sum_k_theorem3_dk(KParams(a, b, nu))
                d = sum_k_direct(KParams(a, b, nu), 1e-11)
                err = abs(t3.value - d.value) / (1.0 + abs(d.value))
                if err > worst:
                    worst, at = err, f"(a={a}, b={b}, nu={nu})"
                worst_dk = max(worst_dk, abs(dk.value - t3.value)
                               / (1.0 + abs(t3.value)))
    ok = worst <= 1e-8 and worst_dk <= 1e-10
    return CheckResult(
        "k-cross-method", ok,
        f"worst vs direct {worst:.2e} ({at}; bound 1e-8), "
        f"single-vs-double {worst_dk:.2e} (bound 1e-10)")


def check_k_nu0(quick: bool = False) -> CheckResult:
    """Order-0 limiting form vs direct summation, plus the a -> b bracket."""
    worst = 0.0
    for a, b in ((0.0, 1.0), (0.2, 1.0), (0.99, 1.0), (1.0, 1.0)):
        n0 = sum_k_nu0(a, b)
        d = sum_k_direct(KParams(a, b, 0.0), 1e-11)
        worst = max(worst, _rel(n0.value, d.value))
    b = 1.0
    exact = sum_k_nu0(b, b).value
    gaps = []
    for f in (0.99, 0.999, 0.9999):
        gaps.append(abs(sum_k_nu0(f * b, b).value - exact))
    monotone = gaps[0] > gaps[1] > gaps[2]
    ok = worst <= 1e-9 and monotone
    return CheckResult(
        "k-order0-limit", ok,
        f"worst rel err {worst:.2e} (bound 1e-9), bracket gaps "
        f"{gaps[0]:.1e} > {gaps[1]:.1e} > {gaps[2]:.1e}: {monotone}")


def check_k_half_integer(quick: bool = False) -> CheckResult:
    """Exponential-sum reduction vs direct summation for m = 0..3."""
    worst = 0.0
    pts = ((0.3, 1.0),) if quick else ((0.3, 1.0), (0.0, 0.8), (1.2, 2.0))
    for m in range(4):
        for a, b in pts:
            h = sum_k_half_integer(m, a, b)
            d = sum_k_direct(KParams(a, b, m + 0.5), 1e-11)
            worst = max(worst, _rel(h.value, d.value))
    return CheckResult("k-half-integer", worst <= 1e-10,
                       f"worst rel err {worst:.2e}; bound 1e-10")


def check_alternating(quick: bool = False) -> CheckResult:
    """alt(a,b) + 2 S(2a,2b) = S(a,b) for both kinds, and the alternating
    value matches term-by-term alternating summation (including a case
    where the doubled frequency forces the direct fallback)."""
    worst_id = 0.0
    cases = [("J", 0.2, 1.0, 0.5), ("J", 0.5, 1.5, 0.25),
             ("K", 0.2, 0.8, 0.5), ("K", 0.4, 1.0, 0.3),
             ("J", 0.1, 3.2, 1.0), ("K", 0.1, 3.2, 0.25)]
    if quick:
        cases = cases[:2] + cases[-2:]
    for kind, a, b, nu in cases:
        alt = evaluate(kind, a, b, nu, alternating=True, tol=1e-12)
        s1 = evaluate(kind, a, b, nu, tol=1e-12)
        s2 = evaluate(kind, 2 * a, 2 * b, nu, tol=1e-12)
        worst_id = max(worst_id, abs(alt.value + 2.0 * s2.value - s1.value)
                       / (1.0 + abs(s1.value)))
    # direct oracle, term by term, for one J and one K fallback case
    from .bessel import bessel_j_scaled, bessel_k_scaled

    worst_o = 0.0
    for kind, a, b, nu in (("J", 0.1, 3.2, 1.0), ("K", 0.1, 3.2, 0.25)):
        kern = bessel_j_scaled if kind == "J" else bessel_k_scaled
        ref = 0.0
        for n in range(1, 2500):
            t = math.exp(-a * n) * kern(nu, b * n)
            ref += t if n % 2 else -t  # n=1 positive
        alt = evaluate(kind, a, b, nu, alternating=True, tol=1e-12)
        worst_o = max(worst_o, _rel(alt.value, ref))
    ok = worst_id <= 1e-12 and worst_o <= 1e-9
    return CheckResult(
        "alternating-identities", ok,
        f"two-term identity {worst_id:.2e} (bound 1e-12), vs term-by-term "
        f"{worst_o:.2e} (bound 1e-9)")


def check_performance(quick: bool = False) -> CheckResult:
    """Direct terms grow like (1/a) log(1/tol); the rearranged series stays
    at a handful of terms as the damping shrinks."""
    tol = 1e-10
    budget = math.log(1.0 / tol)
    ratios = []
    k_terms = []
    a_grid = (1e-2, 1e-3) if quick else (1e-2, 1e-3, 1e-4)
    for a in a_grid:
        d = sum_j_direct(JParams(a, 1.0, 0.5), tol)
        ratios.append(d.terms_used / (budget / a))
        t2 = sum_j_theorem2(JParams(a, 1.0, 0.5))
        k_terms.append(t2.terms_used)
    ok = (all(0.5 <= r <= 2.0 for r in ratios)
          and all(k <= 10 for k in k_terms)
          and max(k_terms) - min(k_terms) <= 2)
    return CheckResult(
        "performance-scaling", ok,
        f"direct/(log(1/tol)/a) ratios {['%.2f' % r for r in ratios]} "
        f"(bounds [0.5, 2]), series terms {k_terms} (bound 10, near-constant)")


def check_scalar_invariants(quick: bool = False) -> CheckResult:
    """Reflection, duplication, functional equation, trivial zeros, and the
    finite-difference check on the zeta derivative."""
    worst_ref = max(
        abs(gamma(x) * gamma(1.0 - x) * sinpi(x) / math.pi - 1.0)
        for x in [i / 20 for i in range(1, 20)])
    worst_dup = max(
        abs(gamma(2 * z) / (2 ** (2 * z - 1) / SQRT_PI * gamma(z) * gamma(z + 0.5)) - 1.0)
        for z in (0.3, 0.7, 1.3, 2.7, 5.5, 20.2, 60.1))
    worst_fe = 0.0
    for s in (-3.5, -2.5, -0.5, 0.5):
        rhs = 2.0 ** s * math.pi ** (s - 1.0) * zeta(1.0 - s) \
            * gamma(1.0 - s) * sinpi(0.5 * s)
        worst_fe = max(worst_fe, abs(zeta(s) / rhs - 1.0))
    zeros_exact = all(zeta(-2.0 * m) == 0.0 for m in range(1, 21))
    h = 1e-5
    fd = (zeta(-3.0 + h) - zeta(-3.0 - h)) / (2.0 * h)
    fd_err = abs(zeta_prime_neg_int(3) - fd)
    cache_err = max(abs(ZETA_EVEN.even(m) / zeta(2.0 * m) - 1.0)
                    for m in range(1, 65))
    ok = (worst_ref <= 1e-12 and worst_dup <= 1e-12 and worst_fe <= 1e-11
          and zeros_exact and fd_err <= 1e-7 and cache_err <= 1e-14)
    return CheckResult(
        "scalar-invariants", ok,
        f"reflection {worst_ref:.1e}, duplication {worst_dup:.1e}, "
        f"functional-eq {worst_fe:.1e}, trivial zeros exact: {zeros_exact}, "
        f"zeta' FD gap {fd_err:.1e} (bound 1e-7), even-zeta table {cache_err:.1e}")


ALL_CHECKS: tuple[Callable[[bool], CheckResult], ...] = (
    check_j_closed_form,
    check_k_closed_form,
    check_j_a0_reduction,
    check_j_cross_method,
    check_k_cross_method,
    check_k_nu0,
    check_k_half_integer,
    check_alternating,
    check_performance,
    check_scalar_invariants,
)


def run_suite(suite: str = "quick") -> list[CheckResult]:
    """Run the named verification suite ('quick' or 'full')."""
    if suite not in ("quick", "full"):
        from .errors import DomainError

        raise DomainError(f"unknown suite {suite!r}; choose 'quick' or 'full'")
    quick = suite == "quick"
    return [check(quick) for check in ALL_CHECKS]
