"""Brute-force enumeration of every alignment of a k-sequence.

Ground truth for the dynamic programs at desk scale. No pruning and no
memoization: each alignment is built column by column from the left and
scored with the definitional scorers in :mod:`nmsa.scoring`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .core import GAP, Alignment, KSequence
from .errors import BudgetExceeded, UnsupportedCombination
from .exact import ExactResult
from .scoring import MatrixArray, ScoringMatrix, score_SP, score_SP_array, score_V1, score_V2, score_V3


@dataclass(frozen=True)
class EnumerationBudget:
    max_alignments: int = 10**7
    max_width: int | None = None  # defaults to the total sequence length

    def __post_init__(self):
        if self.max_alignments <= 0 or (self.max_width is not None and self.max_width <= 0):
            raise ValueError("budget limits must be positive")


def enumerate_alignments(S: KSequence, budget: EnumerationBudget | None = None) -> Iterator[Alignment]:
    """Yield every alignment of ``S`` exactly once.

    Columns are chosen by depth-first search over nonzero bit vectors, larger
    masks first. Raises :class:`BudgetExceeded` once more than
    ``budget.max_alignments`` alignments would be produced.
    """
    budget = budget or EnumerationBudget()
    k = S.k
    seqs = S.sequences
    n = S.lengths
    max_width = budget.max_width if budget.max_width is not None else sum(n)
    masks = range((1 << k) - 1, 0, -1)
    pos = [0] * k
    cols: list[tuple[str, ...]] = []
    emitted = 0

    def rec():
        nonlocal emitted
        if all(pos[h] == n[h] for h in range(k)):
            emitted += 1
            if emitted > budget.max_alignments:
                raise BudgetExceeded(emitted, budget.max_alignments)
            yield Alignment._trusted(tuple("".join(c[h] for c in cols) for h in range(k)))
            return
        if len(cols) >= max_width:
            return
        for b in masks:
            if any(b >> h & 1 and pos[h] == n[h] for h in range(k)):
                continue
            col = tuple(seqs[h][pos[h]] if b >> h & 1 else GAP for h in range(k))
            for h in range(k):
                pos[h] += b >> h & 1
            cols.append(col)
            yield from rec()
            cols.pop()
            for h in range(k):
                pos[h] -= b >> h & 1

    yield from rec()


def count_alignments(S: KSequence, budget: EnumerationBudget | None = None) -> int:
    return sum(1 for _ in enumerate_alignments(S, budget))


_CRITERIA = {
    "sp": score_SP,
    "v1": score_V1,
    "v2": score_V2,
    "v3": score_V3,
    "sp-array": score_SP_array,
}


def _normalize(criterion: str) -> str:
    c = criterion.lower()
    if c not in _CRITERIA:
        raise UnsupportedCombination(f"oracle does not support criterion {criterion!r}")
    return c


def brute_force_optimum(
    S: KSequence,
    gamma: ScoringMatrix | MatrixArray,
    criterion: str,
    budget: EnumerationBudget | None = None,
) -> ExactResult:
    """Minimum of ``criterion`` over all alignments; first minimizer in enumeration order."""
    return brute_force_optima(S, gamma, [criterion], budget)[_normalize(criterion)]


def brute_force_optima(
    S: KSequence,
    gamma: ScoringMatrix | MatrixArray,
    criteria: Iterable[str],
    budget: EnumerationBudget | None = None,
) -> dict[str, ExactResult]:
    """Several criteria in a single enumeration pass."""
    crit = [_normalize(c) for c in criteria]
    for c in crit:
        if (c == "sp-array") != isinstance(gamma, MatrixArray):
            raise UnsupportedCombination(f"criterion {c!r} does not fit the given matrix type")
    best: dict[str, tuple[Fraction, Alignment] | None] = {c: None for c in crit}
    count = 0
    for A in enumerate_alignments(S, budget):
        count += 1
        for c in crit:
            val = _CRITERIA[c](gamma, A)
            cur = best[c]
            if cur is None or val < cur[0]:
                best[c] = (val, A)
    return {
        c: ExactResult(v, A, f"oracle:{c}", 0, {"alignments_enumerated": count})
        for c, (v, A) in best.items()
    }
