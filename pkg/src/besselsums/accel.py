"""Iterated Euler transformation for slowly convergent alternating tails."""

from __future__ import annotations

from itertools import accumulate


def euler_alternating(terms: list[float]) -> tuple[float, float]:
    """Sum an alternating series tail by repeatedly averaging partial sums.

    ``terms`` are the signed terms, in order.  Returns ``(value, err)``
    where ``err`` is the gap of the last averaging stage, a usable
    truncation-error estimate.  With n terms the transform converges like
    2**-n for algebraically decaying alternating tails, so ~50 terms
    reach double precision even when raw convergence is O(k**-1/2).
    """
    if not terms:
        return 0.0, 0.0
    if len(terms) == 1:
        return terms[0], abs(terms[0])
    row = list(accumulate(terms))
    est = abs(terms[-1])
    while len(row) > 1:
        if len(row) == 2:
            est = abs(row[1] - row[0])
        row = [0.5 * (row[i] + row[i + 1]) for i in range(len(row) - 1)]
    return row[0], est
