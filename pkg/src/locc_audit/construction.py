"""Symbolic construction of the cloning/deleting witness pair.

The no-cloning and no-deleting audits both run on one six-particle state:
Alice holds a qutrit, Bob holds four qubits entangled with it plus a spare
"blank" qubit.  Each Alice level is paired with a signed two-word branch
over the alphabet {Z, P}, where Z stands for |0> and P for the overlap
qubit |psi> = alpha |0> + beta |1>:

    level 1:  + Z P Z P   + P Z P Z
    level 2:  + Z P P Z   - P Z Z P
    level 3:  + Z Z P P   - P P Z Z

A hypothetical exact cloner (|0>|b> -> |0>|0>, |psi>|b> -> |psi>|psi>)
acting on Bob's fourth qubit and the blank duplicates the fourth symbol of
every word; the matching exact deleter (|00> -> |0>|b>, |psi psi> ->
|psi>|b>) removes the copy again.  Both machines act term by term on the
branch words, which is the only domain on which they are defined, so they
are represented here as word substitutions rather than linear maps.

Because every pairwise overlap of branch words is a power of alpha, the
3x3 reduced state on Alice's side has entries polynomial in alpha and is
computed exactly when alpha is a Fraction.  The closed-form spectra:

    initial:  (1 + a^4) / (3 - a^4),  (1 - a^4) / (3 - a^4)  twice
    final:    (1 + a^5) / (3 - a^5),
              (1 + a^2)(1 - a^3) / (3 - a^5),
              (1 - a^2)(1 + a^3) / (3 - a^5)

with squared pre-normalization norms 2(3 - a^4) and 2(3 - a^5).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import ATOL_STRUCTURAL, DensityMatrix, PureState, kron
from .majorization import SchmidtVector

ZERO_SYMBOL = "Z"
PSI_SYMBOL = "P"

# (alice_level, sign, word) rows of the pre-cloning state; the blank qubit
# is held separately and appended on expansion.
INITIAL_TERMS = (
    (1, +1, "ZPZP"),
    (1, +1, "PZPZ"),
    (2, +1, "ZPPZ"),
    (2, -1, "PZZP"),
    (3, +1, "ZZPP"),
    (3, -1, "PPZZ"),
)

_SIGN_PATTERN = (+1, +1, +1, -1, +1, -1)
_LEVEL_PATTERN = (1, 1, 2, 2, 3, 3)

BLANK_CHOICES = {
    "zero": (1.0, 0.0),
    "one": (0.0, 1.0),
    "plus": (1.0 / math.sqrt(2.0), 1.0 / math.sqrt(2.0)),
}


class DegenerateOverlapError(ValueError):
    """Overlap alpha is 0 or 1: the two machine inputs coincide or are
    orthogonal and the witness construction collapses."""


class MissingBlankError(ValueError):
    """Cloner applied to a state that no longer carries its blank qubit."""


class MachineDomainError(ValueError):
    """Deleter applied outside its domain of doubled last symbols."""


@dataclass(frozen=True)
class QubitSpec:
    """Real overlap qubit |psi> = alpha |0> + beta |1> with beta >= 0.

    alpha may be a float or a Fraction; a Fraction keeps the overlap
    algebra exact.  Endpoints 0 and 1 are representable (the reduced-state
    algebra stays meaningful there) but rejected by the state builders.
    """

    alpha: object
    beta: float = None

    def __post_init__(self):
        a = float(self.alpha)
        if not 0.0 <= a <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")
        beta = math.sqrt(max(0.0, 1.0 - a * a))
        if self.beta is None:
            object.__setattr__(self, "beta", beta)
        elif abs(a * a + self.beta**2 - 1.0) > ATOL_STRUCTURAL:
            raise ValueError("alpha^2 + beta^2 must equal 1")

    @property
    def alpha_float(self) -> float:
        return float(self.alpha)


@dataclass(frozen=True)
class BranchTerm:
    """One signed word attached to an Alice qutrit level."""

    alice_level: int
    sign: int
    word: str

    def __post_init__(self):
        if self.alice_level not in (1, 2, 3):
            raise ValueError("alice_level must be 1, 2 or 3")
        if self.sign not in (+1, -1):
            raise ValueError("sign must be +1 or -1")
        if not self.word or any(c not in (ZERO_SYMBOL, PSI_SYMBOL) for c in self.word):
            raise ValueError(f"word must be non-empty over {{Z, P}}, got {self.word!r}")


@dataclass(frozen=True)
class SymbolicState:
    """Six signed branch words, two per Alice level, plus an optional blank.

    Words are length 4 while the blank qubit is still attached and length 5
    after cloning consumed it.  Term signs follow the fixed construction
    pattern (+, +, +, -, +, -).
    """

    terms: tuple
    has_blank: bool
    qubit: QubitSpec

    def __post_init__(self):
        terms = tuple(self.terms)
        object.__setattr__(self, "terms", terms)
        if len(terms) != 6:
            raise ValueError("expected exactly 6 branch terms")
        if tuple(t.alice_level for t in terms) != _LEVEL_PATTERN:
            raise ValueError("terms must come in level order 1, 1, 2, 2, 3, 3")
        if tuple(t.sign for t in terms) != _SIGN_PATTERN:
            raise ValueError("term signs must follow the pattern +, +, +, -, +, -")
        lengths = {len(t.word) for t in terms}
        if len(lengths) != 1:
            raise ValueError("all branch words must have equal length")
        expected = 4 if self.has_blank else 5
        if lengths != {expected}:
            raise ValueError(
                f"branch words must have length {expected} when has_blank="
                f"{self.has_blank}"
            )

    @property
    def word_length(self) -> int:
        return len(self.terms[0].word)


def build_initial(qubit: QubitSpec) -> SymbolicState:
    """The pre-cloning witness state for a strictly interior overlap."""
    _require_interior(qubit)
    terms = tuple(BranchTerm(lvl, sign, word) for lvl, sign, word in INITIAL_TERMS)
    return SymbolicState(terms=terms, has_blank=True, qubit=qubit)


def apply_cloner(state: SymbolicState) -> SymbolicState:
    """Duplicate the fourth symbol of every word, consuming the blank."""
    if not state.has_blank:
        raise MissingBlankError("cloner needs the blank qubit, already consumed")
    terms = tuple(
        BranchTerm(t.alice_level, t.sign, t.word + t.word[3]) for t in state.terms
    )
    return SymbolicState(terms=terms, has_blank=False, qubit=state.qubit)


def apply_deleter(state: SymbolicState) -> SymbolicState:
    """Remove the doubled last symbol of every word, releasing a blank.

    Only defined where the last two symbols agree (inputs |00> or
    |psi psi>); anything else raises MachineDomainError.  Exact inverse of
    apply_cloner at the word level.
    """
    if state.has_blank:
        raise MachineDomainError("deleter needs a 5-symbol state without blank")
    for t in state.terms:
        if t.word[-1] != t.word[-2]:
            raise MachineDomainError(
                f"deleter undefined on word {t.word!r}: last two symbols differ"
            )
    terms = tuple(
        BranchTerm(t.alice_level, t.sign, t.word[:-1]) for t in state.terms
    )
    return SymbolicState(terms=terms, has_blank=True, qubit=state.qubit)


def blank_state(choice) -> np.ndarray:
    """Resolve a blank qubit: a name from BLANK_CHOICES or a unit 2-vector."""
    if isinstance(choice, str):
        try:
            choice = BLANK_CHOICES[choice]
        except KeyError:
            raise ValueError(f"unknown blank state {choice!r}") from None
    vec = np.asarray(choice, dtype=np.complex128).reshape(-1)
    if vec.size != 2:
        raise ValueError("blank state must be a single-qubit amplitude pair")
    if abs(np.linalg.norm(vec) - 1.0) > 1e-9:
        raise ValueError("blank state must have unit norm")
    return vec


def raw_expansion(state: SymbolicState, blank="zero") -> np.ndarray:
    """Unnormalized numeric amplitudes, row-major in (Alice, Bob) index.

    The squared norm of the result is the construction normalizer
    2(3 - alpha^4) with the blank attached, 2(3 - alpha^5) after cloning.
    """
    b = blank_state(blank)
    alpha = state.qubit.alpha_float
    symbol_vecs = {
        ZERO_SYMBOL: np.array([1.0, 0.0], dtype=np.complex128),
        PSI_SYMBOL: np.array([alpha, state.qubit.beta], dtype=np.complex128),
    }
    dim_b = 2 ** (state.word_length + (1 if state.has_blank else 0))
    amps = np.zeros((3, dim_b), dtype=np.complex128)
    for t in state.terms:
        vec = np.array([1.0], dtype=np.complex128)
        for sym in t.word:
            vec = kron(vec, symbol_vecs[sym])
        if state.has_blank:
            vec = kron(vec, b)
        amps[t.alice_level - 1] += t.sign * vec
    return amps.reshape(-1)


def expand(state: SymbolicState, blank="zero") -> PureState:
    """Numeric 3 x 32 pure state realizing the symbolic construction."""
    raw = raw_expansion(state, blank)
    dim_b = raw.size // 3
    return PureState(3, dim_b, raw / np.linalg.norm(raw))


def _word_overlap(u: str, t: str, alpha):
    """<u|t> for branch words: alpha to the number of differing positions."""
    ndiff = sum(1 for x, y in zip(u, t) if x != y)
    return alpha**ndiff


def branch_gram(state: SymbolicState):
    """Unnormalized 3x3 Gram matrix of the level branch vectors.

    Entry [j][k] is <B_k|B_j> expanded through the word overlaps, so it is
    exact (Fraction-valued) whenever the overlap alpha is a Fraction.  The
    shared blank qubit drops out of every inner product.
    """
    alpha = state.qubit.alpha
    by_level = {1: [], 2: [], 3: []}
    for t in state.terms:
        by_level[t.alice_level].append(t)
    gram = [[0 for _ in range(3)] for _ in range(3)]
    for j in range(3):
        for k in range(3):
            acc = 0
            for t in by_level[j + 1]:
                for u in by_level[k + 1]:
                    acc += t.sign * u.sign * _word_overlap(u.word, t.word, alpha)
            gram[j][k] = acc
    return gram


def normalizer(state: SymbolicState):
    """Squared pre-normalization norm: the trace of the branch Gram matrix."""
    gram = branch_gram(state)
    return gram[0][0] + gram[1][1] + gram[2][2]


def gram_reduced_density(state: SymbolicState) -> DensityMatrix:
    """Alice's reduced density matrix from symbolic overlaps alone.

    Matches partial_trace_b of the numeric expansion within 1e-12 for any
    blank choice.
    """
    gram = branch_gram(state)
    norm = normalizer(state)
    entries = np.array(
        [[float(gram[j][k] / norm) for k in range(3)] for j in range(3)],
        dtype=np.complex128,
    )
    return DensityMatrix(3, entries)


def initial_spectrum_values(alpha):
    """Closed-form reduced-state spectrum before cloning, unsorted.

    Returns ((1+a^4)/(3-a^4), (1-a^4)/(3-a^4), (1-a^4)/(3-a^4)) in the
    arithmetic of alpha (exact for Fractions).
    """
    a4 = alpha**4
    lam1 = (1 + a4) / (3 - a4)
    lam2 = (1 - a4) / (3 - a4)
    return (lam1, lam2, lam2)


def final_spectrum_values(alpha):
    """Closed-form reduced-state spectrum after cloning, unsorted.

    Returns ((1+a^5)/(3-a^5), (1+a^2)(1-a^3)/(3-a^5),
    (1-a^2)(1+a^3)/(3-a^5)) in the arithmetic of alpha.
    """
    a2 = alpha**2
    a3 = alpha**3
    a5 = alpha**5
    den = 3 - a5
    return ((1 + a5) / den, (1 + a2) * (1 - a3) / den, (1 - a2) * (1 + a3) / den)


def closed_form_initial_spectrum(qubit: QubitSpec) -> SchmidtVector:
    """Descending Schmidt vector of the pre-cloning state from closed form."""
    _require_interior(qubit)
    return SchmidtVector.from_values(
        float(v) for v in initial_spectrum_values(qubit.alpha)
    )


def closed_form_final_spectrum(qubit: QubitSpec) -> SchmidtVector:
    """Descending Schmidt vector of the post-cloning state from closed form."""
    _require_interior(qubit)
    return SchmidtVector.from_values(
        float(v) for v in final_spectrum_values(qubit.alpha)
    )


def _require_interior(qubit: QubitSpec):
    a = qubit.alpha_float
    if a <= 0.0 or a >= 1.0:
        raise DegenerateOverlapError(
            f"overlap alpha={a} is degenerate: need 0 < alpha < 1"
        )
