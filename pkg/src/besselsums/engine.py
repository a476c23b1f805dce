"""Method selection by parameter region, plus convergence studies.

The selection rule mirrors the convergence regions: damping above the
frequency goes to the polylogarithm series, damping at or below a
sub-2pi frequency goes to the expansion paths (the single-series
rearrangement once a/2pi < 0.05, where its geometric ratio buys ~12
digits in a handful of terms), the half-integer-lattice K orders go to
their dedicated forms, and anything else falls back to direct summation.
A fallback is also taken when an expansion cannot meet the requested
tolerance inside its truncation caps, so auto mode never silently
returns a worse answer than the oracle path.
"""

from __future__ import annotations

import math
import time
from typing import Callable

from .errors import DomainError, RegionError
from .results import FALLBACK_USED, ConvergenceRow, EvalResult, Method
from . import sum_j, sum_k
from .sum_j import JParams
from .sum_k import KParams, lattice_distance

TWO_PI = 2.0 * math.pi
_ASYMPTOTIC_A = 0.05 * TWO_PI  # a below this favors the single-series form

AUTO = "auto"


def _params(kind: str, a: float, b: float, nu: float):
    if kind == "J":
        return JParams(a, b, nu)
    if kind == "K":
        return KParams(a, b, nu)
    raise DomainError(f"kind must be 'J' or 'K', got {kind!r}")


def _auto_j(p: JParams, tol: float, max_terms: int | None) -> EvalResult:
    if p.a == 0.0:
        if 0.0 < p.b < TWO_PI:
            return sum_j.sum_j_a0_result(p.b, p.nu)
        raise DomainError(
            f"no convergent method for a=0 with b={p.b} >= 2*pi")
    if p.a > p.b:
        return sum_j.sum_j_polylog(p)
    if p.b < TWO_PI:
        if p.a < _ASYMPTOTIC_A:
            res = sum_j.sum_j_theorem2(p)
        else:
            res = sum_j.sum_j_theorem1(p)
        if res.est_error <= tol:
            return res
        return sum_j.sum_j_direct(p, tol, max_terms).with_flags(FALLBACK_USED)
    return sum_j.sum_j_direct(p, tol, max_terms)


def _auto_k(p: KParams, tol: float, max_terms: int | None) -> EvalResult:
    if lattice_distance(p.nu) <= sum_k.NU_GUARD:
        half = round(2.0 * p.nu)
        if half % 2 == 1:
            return sum_k.sum_k_half_integer((half - 1) // 2, p.a, p.b)
        in_region = p.a <= p.b < TWO_PI
        if half == 0:
            if in_region:
                return sum_k.sum_k_nu0(p.a, p.b)
            return sum_k.sum_k_direct(p, tol, max_terms)
        if in_region:
            return sum_k.sum_k_integer_nu(p, tol)
        return sum_k.sum_k_direct(p, tol, max_terms)
    if p.a > p.b:
        return sum_k.sum_k_polylog(p)
    if p.b < TWO_PI:
        if p.a < _ASYMPTOTIC_A:
            res = sum_k.sum_k_theorem3_dk(p)
        else:
            res = sum_k.sum_k_theorem3(p)
        if res.est_error <= tol:
            return res
        return sum_k.sum_k_direct(p, tol, max_terms).with_flags(FALLBACK_USED)
    return sum_k.sum_k_direct(p, tol, max_terms)


def evaluate(kind: str, a: float, b: float, nu: float,
             method: Method | str = AUTO, tol: float = 1e-10,
             alternating: bool = False,
             max_terms: int | None = None) -> EvalResult:
    """Evaluate one damped Bessel sum (or its alternating variant).

    ``method`` is a Method, its string value, or "auto".  Region errors
    from explicitly requested methods propagate; auto mode only selects
    methods valid at the given parameters.
    """
    p = _params(kind, a, b, nu)
    if isinstance(method, str) and method != AUTO:
        method = Method(method)
    if alternating:
        if method == AUTO:
            r1 = evaluate(kind, a, b, nu, AUTO, tol, False, max_terms)
            r2 = evaluate(kind, 2.0 * a, 2.0 * b, nu, AUTO, tol, False, max_terms)
            return EvalResult(r1.value - 2.0 * r2.value,
                              r1.est_error + 2.0 * r2.est_error,
                              r1.terms_used + r2.terms_used,
                              r1.method, r1.region_flags | r2.region_flags)
        if kind == "J":
            return sum_j.sum_j_alternating(p, method, tol, max_terms)
        return sum_k.sum_k_alternating(p, method, tol, max_terms)
    if method == AUTO:
        if kind == "J":
            return _auto_j(p, tol, max_terms)
        return _auto_k(p, tol, max_terms)
    if kind == "J":
        return sum_j.eval_j(p, method, tol, max_terms)
    return sum_k.eval_k(p, method, tol, max_terms)


# --- convergence studies --------------------------------------------------

def _leveled(kind: str, method: Method, p, level: int) -> EvalResult:
    if kind == "J":
        table: dict[Method, Callable] = {
            Method.DIRECT: lambda: sum_j.sum_j_direct(p, 1e-12, level=level),
            Method.POLYLOG: lambda: sum_j.sum_j_polylog(p, level=level),
            Method.THEOREM: lambda: sum_j.sum_j_theorem1(p, level=level),
            Method.ASYMPTOTIC: lambda: sum_j.sum_j_theorem2(p, level=level),
            Method.SPECIAL: lambda: sum_j.sum_j_a0_result(p.b, p.nu),
        }
    else:
        table = {
            Method.DIRECT: lambda: sum_k.sum_k_direct(p, 1e-12, level=level),
            Method.POLYLOG: lambda: sum_k.sum_k_polylog(p, level=level),
            Method.THEOREM: lambda: sum_k.sum_k_theorem3(p, level=level),
            Method.ASYMPTOTIC: lambda: sum_k.sum_k_theorem3_dk(p, level=level),
            Method.SPECIAL: lambda: sum_k.sum_k_nu0(p.a, p.b, level=level),
        }
    return table[method]()


def convergence_table(kind: str, a: float, b: float, nu: float,
                      methods: list[Method | str],
                      reference: Method | str = AUTO,
                      levels: list[int] | None = None,
                      tol: float = 1e-12,
                      ) -> tuple[list[ConvergenceRow], list[str]]:
    """Partial values of each method at the given truncation levels, with
    absolute error against the reference method's converged value.

    A truncation level counts terms of the method's principal series
    (kernel terms for direct, series terms for polylog and the
    single-series form, anti-diagonals for the double sums).  Methods
    invalid at the given parameters are skipped with a note.
    """
    if levels is None:
        levels = [1, 2, 4, 8, 16, 32]
    if any(lv < 1 for lv in levels):
        raise DomainError("levels must be positive")
    if sorted(levels) != levels:
        raise DomainError("levels must be increasing")
    p = _params(kind, a, b, nu)
    ref = evaluate(kind, a, b, nu, reference, tol)
    rows: list[ConvergenceRow] = []
    notes: list[str] = []
    for m in methods:
        m = Method(m) if not isinstance(m, Method) else m
        try:
            for lv in levels:
                t0 = time.perf_counter()
                r = _leveled(kind, m, p, lv)
                dt = time.perf_counter() - t0
                rows.append(ConvergenceRow(m, lv, r.value,
                                           abs(r.value - ref.value), dt))
        except (RegionError, DomainError) as exc:
            notes.append(f"{m}: skipped ({exc})")
    return rows, notes
