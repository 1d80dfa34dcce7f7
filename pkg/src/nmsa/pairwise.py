"""Pairwise distances: weighted edit distance, normalized edit distance, and
the maximum-length heuristic for the latter."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import GAP, Alignment, KSequence
from .errors import AlphabetMismatch, ValidationError
from .exact import msa_exact, nmsa1_exact
from .scoring import ScoringMatrix


@dataclass(frozen=True)
class PairwiseResult:
    value: Fraction
    alignment: Alignment
    table_stats: int = 0


def _pair(s: str, t: str) -> KSequence:
    return KSequence((s, t))


def dist_A(s: str, t: str, gamma: ScoringMatrix) -> PairwiseResult:
    """Minimum alignment cost of ``s`` and ``t`` with a traceback alignment."""
    r = msa_exact(_pair(s, t), gamma, max_cells=None)
    return PairwiseResult(r.value, r.alignment, r.cells_computed)


def dist_N(s: str, t: str, gamma: ScoringMatrix) -> PairwiseResult:
    """Minimum of cost / width over all alignments of ``s`` and ``t``.

    Table over (i, j, width); with two rows the width and the SP width coincide.
    """
    r = nmsa1_exact(_pair(s, t), gamma, max_cells=None)
    return PairwiseResult(r.value, r.alignment, r.cells_computed)


def _cost_length_table(s: str, t: str, gamma: ScoringMatrix):
    """Per cell (i, j): (min cost, max width among min-cost alignments)."""
    try:
        cs, ct = gamma.encode(s), gamma.encode(t)
    except ValidationError as exc:
        raise AlphabetMismatch(str(exc)) from None
    e = gamma.entries
    g = gamma.gap_index
    n, m = len(s), len(t)
    T = [[(0, 0)] * (m + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        for j in range(m + 1):
            if not i and not j:
                continue
            cands = []
            if i and j:
                c, l = T[i - 1][j - 1]
                cands.append((c + e[cs[i - 1]][ct[j - 1]], l + 1))
            if i:
                c, l = T[i - 1][j]
                cands.append((c + e[cs[i - 1]][g], l + 1))
            if j:
                c, l = T[i][j - 1]
                cands.append((c + e[g][ct[j - 1]], l + 1))
            best = min(c for c, _ in cands)
            T[i][j] = (best, max(l for c, l in cands if c == best))
    return T, cs, ct


def max_optimal_length(s: str, t: str, gamma: ScoringMatrix) -> int:
    """Largest width among minimum-cost alignments of ``s`` and ``t``."""
    T, _, _ = _cost_length_table(s, t, gamma)
    return T[len(s)][len(t)][1]


def longest_optimal_alignment(s: str, t: str, gamma: ScoringMatrix) -> Alignment:
    """A minimum-cost alignment of maximum width (diagonal preferred on ties)."""
    T, cs, ct = _cost_length_table(s, t, gamma)
    e, g = gamma.entries, gamma.gap_index
    i, j = len(s), len(t)
    top, bot = [], []
    while i or j:
        c, l = T[i][j]
        if i and j and T[i - 1][j - 1] == (c - e[cs[i - 1]][ct[j - 1]], l - 1):
            top.append(s[i - 1]); bot.append(t[j - 1]); i -= 1; j -= 1
        elif i and T[i - 1][j] == (c - e[cs[i - 1]][g], l - 1):
            top.append(s[i - 1]); bot.append(GAP); i -= 1
        else:
            top.append(GAP); bot.append(t[j - 1]); j -= 1
    return Alignment(("".join(reversed(top)), "".join(reversed(bot))))


def heuristic_N(s: str, t: str, gamma: ScoringMatrix) -> Fraction:
    """Optimal cost divided by the longest optimal width; at most twice d_N."""
    T, _, _ = _cost_length_table(s, t, gamma)
    c, l = T[len(s)][len(t)]
    return Fraction(0) if l == 0 else Fraction(c, gamma.denominator * l)
