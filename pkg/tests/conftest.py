"""Shared deterministic samplers for the property suites.

Random simplex points are sorted normalized i.i.d. exponentials.  To keep
float and exact-rational classifications comparable, samples are carried
as exact Fractions (each double converts exactly) normalized to sum to
exactly 1, and pairs whose decision margins fall under 1e-8 are discarded
rather than asserted through the tolerance boundary.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

MIN_MARGIN = 1e-8


def rational_simplex(rng: np.random.Generator, d: int) -> list:
    """Descending exact-rational probability vector of length d."""
    draws = [Fraction(x) for x in rng.exponential(size=d)]
    total = sum(draws)
    vals = sorted((x / total for x in draws), reverse=True)
    return vals


def float_probs(fracs) -> tuple:
    return tuple(float(x) for x in fracs)


def partial_sum_margins(a, b) -> list:
    """Absolute partial-sum gaps for k < d (the k = d sums both equal 1)."""
    gaps = []
    run = Fraction(0)
    for x, y in zip(a[:-1], b[:-1]):
        run += x - y
        gaps.append(abs(run))
    return gaps


def simplex_pair(rng: np.random.Generator, d: int):
    """Margin-filtered pair of exact simplex vectors of one length."""
    while True:
        a = rational_simplex(rng, d)
        b = rational_simplex(rng, d)
        if min(partial_sum_margins(a, b)) >= MIN_MARGIN:
            return a, b


def strict_triple_pair(rng: np.random.Generator):
    """Pair of strictly ordered positive triples with safe fast-path margins."""
    while True:
        a = rational_simplex(rng, 3)
        b = rational_simplex(rng, 3)
        order_margin = min(
            a[0] - a[1], a[1] - a[2], a[2], b[0] - b[1], b[1] - b[2], b[2]
        )
        head_tail_margin = min(abs(a[0] - b[0]), abs(a[2] - b[2]))
        if min(order_margin, head_tail_margin) >= MIN_MARGIN:
            return a, b
