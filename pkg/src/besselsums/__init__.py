"""Damped Bessel-function sums by region-adaptive convergent expansions.

Evaluates sum_{n>=1} e^{-an} (bn/2)^-v J_v(bn) and the K-kernel
counterpart, switching between a polylogarithm series, coefficient-table
expansions built for the slowly convergent small-damping regime, special
closed forms, and a literal-summation oracle that every other path is
cross-validated against.
"""

from .engine import convergence_table, evaluate
from .errors import (BesselSumError, CapacityError, ConditioningError,
                     DivergenceError, DomainError, PoleError, RegionError,
                     RoutingError)
from .results import ConvergenceRow, EvalResult, Method
from .sum_j import JParams
from .sum_k import KParams
from .verify import run_suite

__version__ = "0.1.0"

__all__ = [
    "BesselSumError",
    "CapacityError",
    "ConditioningError",
    "ConvergenceRow",
    "DivergenceError",
    "DomainError",
    "EvalResult",
    "JParams",
    "KParams",
    "Method",
    "PoleError",
    "RegionError",
    "RoutingError",
    "convergence_table",
    "evaluate",
    "run_suite",
    "__version__",
]
