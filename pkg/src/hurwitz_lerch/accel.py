"""Sequence acceleration helpers."""

from __future__ import annotations

import math
from typing import Callable, Sequence


def cvz_alternating(term: Callable[[int], complex], n: int = 40) -> complex:
    """Cohen-Rodriguez Villegas-Zagier sum of sum_k (-1)^k term(k).

    Uses the Chebyshev-weight variant (Algorithm 1); the error for totally
    monotone terms is about 5.8**-n.  Also returns the Abel-type value for
    polynomially growing terms.
    """
    d = (3.0 + math.sqrt(8.0)) ** n
    d = (d + 1.0 / d) / 2.0
    b = -1.0
    c = -d
    s = 0j
    for k in range(n):
        c = b - c
        s += c * term(k)
        b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1.0))
    return s / d


def richardson(values: Sequence[complex], ratio: float = 2.0, order: int = 1) -> list[list[complex]]:
    """Richardson table for values taken at step sizes h, h/ratio, h/ratio**2, ...

    Assumes an error expansion in powers h**order, h**(order+1), ...
    Returns the triangular tableau; ``table[-1][-1]`` is the best estimate.
    """
    table = [[complex(v)] for v in values]
    for i in range(1, len(values)):
        for j in range(1, i + 1):
            f = ratio ** (order + j - 1)
            prev = table[i][j - 1]
            table[i].append(prev + (prev - table[i - 1][j - 1]) / (f - 1.0))
    return table
