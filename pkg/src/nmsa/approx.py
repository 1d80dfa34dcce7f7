"""Center-star approximation for SP and the pairwise-normalized criterion.

Pipeline: optimal star -> split substitution columns that are no cheaper
than an indel -> merge the arms into one alignment that induces every arm.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from .core import GAP, Alignment, KSequence
from .errors import IncoherentStar, ValidationError
from .pairwise import dist_A, dist_N
from .scoring import ScoringMatrix, classify_matrix, score_A, score_N, score_SP, score_V2

log = logging.getLogger(__name__)

_PAIR_SCORE = {"A": score_A, "N": score_N}


@dataclass(frozen=True)
class Star:
    """``arms[h]`` aligns ``s_h`` with ``s_c``, lower index in row 0; ``arms[c]`` is None."""

    center: int
    arms: tuple[Alignment | None, ...]

    @property
    def k(self) -> int:
        return len(self.arms)

    def cost(self, gamma: ScoringMatrix, criterion: str = "A") -> Fraction:
        f = _PAIR_SCORE[criterion.upper()]
        return sum((f(gamma, X) for X in self.arms if X is not None), Fraction(0))


@dataclass(frozen=True)
class ApproxResult:
    alignment: Alignment
    value: Fraction
    center: int
    guarantee: str
    star: Star | None = None


def optimal_star(S: KSequence, gamma: ScoringMatrix, criterion: str = "A") -> Star:
    """Center minimizing the summed pairwise optima; smallest index on ties."""
    criterion = criterion.upper()
    if criterion not in _PAIR_SCORE:
        raise ValidationError(f"star criterion must be A or N, got {criterion!r}")
    if S.k < 2:
        raise ValidationError("a star needs k >= 2")
    dist = dist_A if criterion == "A" else dist_N
    k = S.k
    opt = {}
    for h in range(k):
        for i in range(h + 1, k):
            opt[h, i] = dist(S[h], S[i], gamma)
    best = None
    for c in range(k):
        total = sum(opt[min(h, c), max(h, c)].value for h in range(k) if h != c)
        if best is None or total < best[0]:
            best = (total, c)
    c = best[1]
    arms = tuple(None if h == c else opt[min(h, c), max(h, c)].alignment for h in range(k))
    return Star(c, arms)


def split_alignment(X: Alignment, gamma: ScoringMatrix) -> Alignment:
    """Replace every substitution column (s, t) with min(gap(s), gap(t)) <= cost(s, t)
    by the two columns (s, -), (-, t)."""
    top, bot = [], []
    for s, t in X.columns():
        if s != GAP and t != GAP and min(gamma(t, GAP), gamma(s, GAP)) <= gamma(s, t):
            top.append(s + GAP)
            bot.append(GAP + t)
        else:
            top.append(s)
            bot.append(t)
    return Alignment(("".join(top), "".join(bot)))


def star_splitting(X: Star, gamma: ScoringMatrix) -> Star:
    return Star(X.center, tuple(None if a is None else split_alignment(a, gamma) for a in X.arms))


def compatible_align(Y: Star, S: KSequence | None = None) -> Alignment:
    """One alignment of all sequences whose pair (h, center) restriction equals arm h.

    Symbols of s_h facing a gap in the arm get a column of their own. Before
    each center symbol, such columns are emitted arm by arm in index order.
    """
    c = Y.center
    k = Y.k
    if not 0 <= c < k or Y.arms[c] is not None:
        raise IncoherentStar("center arm must be empty")
    center_seq = None
    # per arm: inserts[p] = s_h symbols placed before center symbol p; match[p] = symbol facing it
    inserts: list[list[list[str]]] = [[] for _ in range(k)]
    match: list[list[str]] = [[] for _ in range(k)]
    for h, X in enumerate(Y.arms):
        if X is None:
            continue
        if X.k != 2:
            raise IncoherentStar(f"arm {h + 1} is not a 2-row alignment")
        rows = X.rows if h < c else X.rows[::-1]
        seq_h, seq_c = (r.replace(GAP, "") for r in rows)
        if center_seq is None:
            center_seq = seq_c
        elif seq_c != center_seq:
            raise IncoherentStar(f"arm {h + 1} disagrees on the center sequence")
        if S is not None and (seq_h != S[h] or seq_c != S[c]):
            raise IncoherentStar(f"arm {h + 1} does not align s_{h + 1} with s_{c + 1}")
        ins = [[] for _ in range(len(seq_c) + 1)]
        m = []
        for a, b in zip(*rows):
            if b == GAP:
                ins[len(m)].append(a)
            else:
                m.append(a)
        inserts[h], match[h] = ins, m
    if center_seq is None:
        raise IncoherentStar("star has no arms")

    cols: list[list[str]] = []
    for p in range(len(center_seq) + 1):
        for h in range(k):
            if h == c:
                continue
            for sym in inserts[h][p]:
                col = [GAP] * k
                col[h] = sym
                cols.append(col)
        if p < len(center_seq):
            col = [match[h][p] if h != c else center_seq[p] for h in range(k)]
            cols.append(col)
    return Alignment(tuple("".join(col[h] for col in cols) for h in range(k)))


def approx_msa(S: KSequence, gamma: ScoringMatrix) -> ApproxResult:
    """SP approximation: factor 2 for metric matrices (no splitting needed),
    factor 6 for matrices whose edit distance is a metric, no guarantee otherwise."""
    report = classify_matrix(gamma)
    X = optimal_star(S, gamma, "A")
    if report.in_MC:
        Y, tag = X, "2"
    else:
        Y, tag = star_splitting(X, gamma), "6" if report.in_MW else "none"
        if tag == "none":
            log.warning("scoring matrix outside the metric classes; no approximation guarantee")
    A = compatible_align(Y, S)
    return ApproxResult(A, score_SP(gamma, A), X.center, tag, Y)


def approx_nmsa2(S: KSequence, gamma: ScoringMatrix) -> ApproxResult:
    """Pairwise-normalized approximation built from normalized-distance arms; factor 12
    when the normalized edit distance is a metric."""
    report = classify_matrix(gamma)
    tag = "12" if report.in_MN else "none"
    if tag == "none":
        log.warning("scoring matrix outside the normalized-metric class; no approximation guarantee")
    X = optimal_star(S, gamma, "N")
    Y = star_splitting(X, gamma)
    A = compatible_align(Y, S)
    return ApproxResult(A, score_V2(gamma, A), X.center, tag, Y)
