"""Result containers shared by the evaluators, the engine, and the CLI."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field


class Method(str, enum.Enum):
    """One evaluation algorithm.

    DIRECT      term-by-term summation of the defining series
    POLYLOG     polylogarithm expansion (damping at least the frequency)
    THEOREM     double coefficient-sum expansion (damping below frequency)
    ASYMPTOTIC  single-sum rearrangement of THEOREM in powers of the damping
    SPECIAL     closed forms and limits: a = 0 (J), order 0 or half-integer (K)
    """

    DIRECT = "direct"
    POLYLOG = "polylog"
    THEOREM = "theorem"
    ASYMPTOTIC = "asymptotic"
    SPECIAL = "special"

    def __str__(self) -> str:  # keep CLI/JSON output plain
        return self.value


# diagnostic flags carried by EvalResult.region_flags
NEAR_BOUNDARY = "near-boundary"
CONDITIONAL_CONVERGENCE = "conditional-convergence"
FALLBACK_USED = "fallback-used"
MAX_TERMS_CAPPED = "max-terms-capped"
TOL_NOT_MET = "tol-not-met"


@dataclass(frozen=True)
class EvalResult:
    """Value of one sum evaluation plus its provenance.

    ``terms_used`` counts terms of the method's principal series
    (auxiliary closed-form factors are O(1) and excluded), and
    ``est_error`` is a truncation-based estimate, not a rigorous bound.
    """

    value: float
    est_error: float
    terms_used: int
    method: Method
    region_flags: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.est_error < 0.0:
            raise ValueError("est_error must be nonnegative")
        if self.terms_used < 1:
            raise ValueError("terms_used must be at least 1")

    def with_flags(self, *flags: str) -> "EvalResult":
        return EvalResult(self.value, self.est_error, self.terms_used,
                          self.method, self.region_flags | set(flags))


@dataclass(frozen=True)
class ConvergenceRow:
    """One truncation level of one method in a convergence study."""

    method: Method
    level: int
    value: float
    abs_error: float
    seconds: float
