"""The one-parameter Gauss hypergeometric family 2F1(1, 1-v; 3/2; z).

Only this family is needed: it closes the even/odd split of the residue
series behind both sum kinds.  Direct power series for z in (-0.5, 1);
for z in [-1, -0.5] the argument is mapped to z/(z-1) in (0, 1/2] --
2F1(1, 1-v; 3/2; z) = (1-z)^-1 2F1(1, v+1/2; 3/2; z/(z-1)) -- which keeps
every term positive and the ratio at most 1/2.  z = -1 is included
because the expansions evaluate there when the damping equals the
frequency.
"""

from __future__ import annotations

from .errors import CapacityError, DomainError

_TERM_EPS = 1e-17
_MAX_TERMS = 300_000


def _series(b: float, z: float) -> tuple[float, int]:
    # 2F1(1, b; 3/2; z) = sum_k (b)_k z^k / (3/2)_k
    total = 1.0
    term = 1.0
    k = 0
    while True:
        term *= (b + k) * z / (1.5 + k)
        total += term
        k += 1
        if abs(term) < _TERM_EPS * abs(total):
            return total, k + 1
        if k > _MAX_TERMS:
            raise CapacityError(f"2F1 series stalled at z={z}")


def hyp2f1_special(nu: float, z: float) -> float:
    """2F1(1, 1-nu; 3/2; z) for -1 <= z < 1."""
    val, _ = hyp2f1_special_count(nu, z)
    return val


def hyp2f1_special_count(nu: float, z: float) -> tuple[float, int]:
    """Same as hyp2f1_special but also reports the series length used."""
    if not -1.0 <= z < 1.0:
        raise DomainError(f"2F1 argument must lie in [-1, 1), got z={z}")
    if z == 0.0:
        return 1.0, 1
    if z <= -0.5:
        w = z / (z - 1.0)
        val, n = _series(nu + 0.5, w)
        return val / (1.0 - z), n
    return _series(1.0 - nu, z)
