"""Schmidt vectors and deterministic-LOCC convertibility classification.

A bipartite pure state converts to another with certainty under local
operations and classical communication exactly when its Schmidt vector is
majorized by the target's: every partial sum of the descending-sorted
source weights stays below the corresponding target partial sum.  On top
of that single test this module builds the four-way verdict for a pair
(equivalent, one-way in either direction, or incomparable) and the closed
three-level shortcut that reads incomparability off the largest and
smallest weights alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .linalg import PureState, hermitian_eigs, partial_trace_b

# All comparisons of near-equal Schmidt weights are absolute: the values
# live in [0, 1], where a relative tolerance misbehaves near zero.
ATOL = 1e-10

_ZERO_CLAMP = 1e-12


class FastPathInapplicable(ValueError):
    """Triple shortcut precondition (strict order, strict positivity) fails."""


class Verdict(Enum):
    EQUIVALENT = "Equivalent"
    FORWARD_ONLY = "ForwardOnly"
    BACKWARD_ONLY = "BackwardOnly"
    INCOMPARABLE = "Incomparable"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class SchmidtVector:
    """Descending probability vector of squared Schmidt coefficients."""

    probs: tuple

    @classmethod
    def from_values(cls, values) -> "SchmidtVector":
        vals = [float(x) for x in values]
        if not vals:
            raise ValueError("Schmidt vector must be non-empty")
        if min(vals) < -_ZERO_CLAMP:
            raise ValueError(f"negative Schmidt weight {min(vals)}")
        vals = [0.0 if v < 0.0 else v for v in vals]
        total = sum(vals)
        if abs(total - 1.0) > ATOL:
            raise ValueError(f"Schmidt weights sum to {total}, not 1 within 1e-10")
        return cls(tuple(sorted(vals, reverse=True)))

    def __len__(self) -> int:
        return len(self.probs)


def _weights(v) -> tuple:
    if isinstance(v, SchmidtVector):
        return v.probs
    return tuple(float(x) for x in v)


def schmidt_vector(state: PureState) -> SchmidtVector:
    """Schmidt vector of a bipartite pure state.

    Equals the descending eigenvalues of the reduced state on the smaller
    side, zero-clamped and cut to min(dim_a, dim_b) entries.
    """
    rho = partial_trace_b(state)
    evals = list(hermitian_eigs(rho))
    rank = min(state.dim_a, state.dim_b)
    evals = evals[:rank] + [0.0] * (rank - len(evals))
    return SchmidtVector.from_values(evals)


def entanglement_entropy(sv) -> float:
    """Entropy of entanglement in bits: -sum p log2 p, with 0 log 0 := 0."""
    total = 0.0
    for p in _weights(sv):
        if p > _ZERO_CLAMP:
            total -= p * math.log2(p)
    return total


def is_majorized_by(a, b, *, tol: float = ATOL) -> bool:
    """Whether every partial sum of a stays within tol below b's.

    True means the state carrying Schmidt vector a converts to the one
    carrying b deterministically.  The shorter vector is zero-padded.
    """
    pa = list(_weights(a))
    pb = list(_weights(b))
    n = max(len(pa), len(pb))
    pa += [0.0] * (n - len(pa))
    pb += [0.0] * (n - len(pb))
    run_a = 0.0
    run_b = 0.0
    for x, y in zip(pa, pb):
        run_a += x
        run_b += y
        if run_a > run_b + tol:
            return False
    return True


def classify(a, b, *, tol: float = ATOL) -> Verdict:
    """Four-way convertibility verdict for a pair of Schmidt vectors."""
    forward = is_majorized_by(a, b, tol=tol)
    backward = is_majorized_by(b, a, tol=tol)
    if forward and backward:
        return Verdict.EQUIVALENT
    if forward:
        return Verdict.FORWARD_ONLY
    if backward:
        return Verdict.BACKWARD_ONLY
    return Verdict.INCOMPARABLE


def incomparable_fast_path_d3(a, b) -> bool:
    """Incomparability of two strictly ordered positive triples.

    For triples with a1 > a2 > a3 > 0 the pair is incomparable exactly when
    one vector has both the larger head and the larger tail:
    (a1 > b1 and a3 > b3) or (b1 > a1 and b3 > a3).  Ties or zeros raise
    FastPathInapplicable; callers then fall back to classify().
    """
    pa = _weights(a)
    pb = _weights(b)
    for name, p in (("a", pa), ("b", pb)):
        if len(p) != 3:
            raise FastPathInapplicable(f"{name} is not a triple")
        if not (p[0] > p[1] > p[2] > 0.0):
            raise FastPathInapplicable(f"{name} is not strictly decreasing and positive")
    return (pa[0] > pb[0] and pa[2] > pb[2]) or (pb[0] > pa[0] and pb[2] > pa[2])
