"""Scoring matrices, matrix classes, and the alignment criteria.

All values are exact :class:`fractions.Fraction` objects. A
:class:`ScoringMatrix` stores non-negative integer entries together with a
positive ``denominator``; the cost it represents is ``entry / denominator``.
Rational input is canonicalized by multiplying through by the LCM of the
entry denominators, so kernels only ever see integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import lcm, trunc
from typing import Mapping, Sequence

from .core import GAP, Alignment, Alphabet
from .errors import ArityMismatch, NonPositiveScale, ValidationError, WrongRowCount

Number = int | Fraction


@dataclass(frozen=True)
class ScoringMatrix:
    alphabet: Alphabet
    entries: tuple[tuple[int, ...], ...]
    denominator: int = 1
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        size = len(self.alphabet) + 1
        entries = tuple(tuple(int(x) for x in row) for row in self.entries)
        if len(entries) != size or any(len(r) != size for r in entries):
            raise ValidationError(f"matrix must be {size}x{size}")
        if any(x < 0 for r in entries for x in r):
            raise ValidationError("matrix entries must be non-negative")
        if self.denominator < 1:
            raise ValidationError("denominator must be positive")
        # (gap, gap) is never a real entry; column scoring reads it as 0
        if entries[-1][-1] != 0:
            rows = [list(r) for r in entries]
            rows[-1][-1] = 0
            entries = tuple(tuple(r) for r in rows)
        object.__setattr__(self, "entries", entries)
        index = {s: i for i, s in enumerate(self.alphabet.symbols)}
        index[GAP] = len(self.alphabet)
        object.__setattr__(self, "_index", index)

    @classmethod
    def from_rationals(cls, alphabet: Alphabet | Sequence[str], table) -> "ScoringMatrix":
        """Build from a square table of rationals over alphabet + gap (gap last).

        ``table[-1][-1]`` may be ``None``. Entries are scaled by the LCM of
        their denominators.
        """
        if not isinstance(alphabet, Alphabet):
            alphabet = Alphabet(tuple(alphabet))
        size = len(alphabet) + 1
        values = []
        for a, row in enumerate(table):
            vals = []
            for b, x in enumerate(row):
                if a == size - 1 and b == size - 1:
                    vals.append(Fraction(0))
                    continue
                x = Fraction(x)
                if x < 0:
                    raise ValidationError("matrix entries must be non-negative")
                vals.append(x)
            values.append(vals)
        den = lcm(*(x.denominator for row in values for x in row))
        entries = tuple(tuple(int(x * den) for x in row) for row in values)
        return cls(alphabet, entries, den)

    @classmethod
    def uniform(cls, alphabet, mismatch: Number = 1, gap: Number = 1) -> "ScoringMatrix":
        """Zero diagonal, constant substitution and indel costs."""
        if not isinstance(alphabet, Alphabet):
            alphabet = Alphabet(tuple(alphabet))
        s = len(alphabet)
        table = [
            [0 if a == b else (gap if s in (a, b) else mismatch) for b in range(s + 1)]
            for a in range(s + 1)
        ]
        return cls.from_rationals(alphabet, table)

    @classmethod
    def levenshtein(cls, alphabet) -> "ScoringMatrix":
        return cls.uniform(alphabet, 1, 1)

    @property
    def symbols(self) -> tuple[str, ...]:
        return self.alphabet.symbols + (GAP,)

    @property
    def gap_index(self) -> int:
        return len(self.alphabet)

    def code(self, symbol: str) -> int:
        return self._index[symbol]

    def int_cost(self, x: str, y: str) -> int:
        return self.entries[self._index[x]][self._index[y]]

    def cost(self, x: str, y: str) -> Fraction:
        return Fraction(self.int_cost(x, y), self.denominator)

    def __call__(self, x: str, y: str) -> Fraction:
        return self.cost(x, y)

    def rational_table(self) -> list[list[Fraction]]:
        return [[Fraction(x, self.denominator) for x in row] for row in self.entries]

    def encode(self, seq: str) -> list[int]:
        try:
            return [self._index[ch] for ch in seq]
        except KeyError as exc:
            raise ValidationError(f"symbol {exc.args[0]!r} not in matrix alphabet") from None

    def max_gap_cost(self) -> Fraction:
        g = self.gap_index
        return Fraction(
            max(max(self.entries[a][g], self.entries[g][a]) for a in range(g)),
            self.denominator,
        )


def scale_matrix(gamma: ScoringMatrix, c: Number) -> ScoringMatrix:
    c = Fraction(c)
    if c <= 0:
        raise NonPositiveScale(f"scale factor must be positive, got {c}")
    return ScoringMatrix.from_rationals(
        gamma.alphabet, [[x * c for x in row] for row in gamma.rational_table()]
    )


@dataclass(frozen=True)
class MatrixArray:
    """One scoring matrix per unordered pair {h, i}, h < i (0-based)."""

    k: int
    matrices: Mapping[tuple[int, int], ScoringMatrix]

    def __post_init__(self):
        expected = set(combinations(range(self.k), 2))
        if set(self.matrices) != expected:
            raise ArityMismatch(f"matrix array must cover exactly the pairs of k={self.k}")
        alphabets = {m.alphabet for m in self.matrices.values()}
        if len(alphabets) > 1:
            raise ValidationError("all matrices in an array must share one alphabet")

    @classmethod
    def uniform(cls, gamma: ScoringMatrix, k: int) -> "MatrixArray":
        return cls(k, {p: gamma for p in combinations(range(k), 2)})

    @classmethod
    def times_lengths(cls, gamma: ScoringMatrix, lengths: Sequence[int], k: int) -> "MatrixArray":
        """``gamma x L``: pair (h, i) gets ``gamma / L_hi``.

        A zero length only occurs for a pair of empty sequences, whose matrix
        is never read; ``gamma`` itself is used there.
        """
        ps = list(combinations(range(k), 2))
        if len(lengths) != len(ps):
            raise ArityMismatch(f"need {len(ps)} induced lengths, got {len(lengths)}")
        mats = {}
        for p, L in zip(ps, lengths):
            if L < 0:
                raise ValidationError("induced lengths must be non-negative")
            mats[p] = gamma if L == 0 else ScoringMatrix(
                gamma.alphabet, gamma.entries, gamma.denominator * L
            )
        return cls(k, mats)

    @property
    def alphabet(self) -> Alphabet:
        return next(iter(self.matrices.values())).alphabet

    def __getitem__(self, pair):
        return self.matrices[pair]


# -- per-alignment scores ---------------------------------------------------


def _pair_cost(gamma: ScoringMatrix, r1: str, r2: str) -> tuple[int, int]:
    """Integer cost and width of the pair (r1, r2) with all-gap columns dropped."""
    idx = gamma._index
    ent = gamma.entries
    cost = width = 0
    for x, y in zip(r1, r2):
        if x == GAP and y == GAP:
            continue
        cost += ent[idx[x]][idx[y]]
        width += 1
    return cost, width


def pair_stats(gamma: ScoringMatrix, A: Alignment) -> list[tuple[Fraction, int]]:
    """(A-score, width) of every induced pair, in (0,1), (0,2), ... order."""
    out = []
    for h, i in combinations(range(A.k), 2):
        c, w = _pair_cost(gamma, A.rows[h], A.rows[i])
        out.append((Fraction(c, gamma.denominator), w))
    return out


def _require_two_rows(A: Alignment):
    if A.k != 2:
        raise WrongRowCount(f"expected a 2-row alignment, got {A.k} rows")


def score_A(gamma: ScoringMatrix, A: Alignment) -> Fraction:
    _require_two_rows(A)
    idx, ent = gamma._index, gamma.entries
    return Fraction(
        sum(ent[idx[x]][idx[y]] for x, y in zip(*A.rows)), gamma.denominator
    )


def score_N(gamma: ScoringMatrix, A: Alignment) -> Fraction:
    _require_two_rows(A)
    if A.width == 0:
        return Fraction(0)
    return score_A(gamma, A) / A.width


def column_cost(gamma: ScoringMatrix, column: Sequence[str]) -> Fraction:
    """SP cost of a single column, reading (gap, gap) as 0."""
    idx, ent = gamma._index, gamma.entries
    codes = [idx[x] for x in column]
    total = sum(ent[a][b] for a, b in combinations(codes, 2))
    return Fraction(total, gamma.denominator)


def score_SP(gamma: ScoringMatrix, A: Alignment) -> Fraction:
    idx, ent = gamma._index, gamma.entries
    total = 0
    for col in A.columns():
        codes = [idx[x] for x in col]
        for a, b in combinations(codes, 2):
            total += ent[a][b]
    return Fraction(total, gamma.denominator)


def score_SP_array(gammas: MatrixArray, A: Alignment) -> Fraction:
    if gammas.k != A.k:
        raise ArityMismatch(f"matrix array is for k={gammas.k}, alignment has {A.k} rows")
    total = Fraction(0)
    for (h, i), g in gammas.matrices.items():
        c, _ = _pair_cost(g, A.rows[h], A.rows[i])
        total += Fraction(c, g.denominator)
    return total


def score_V1(gamma: ScoringMatrix, A: Alignment) -> Fraction:
    if A.width == 0:
        return Fraction(0)
    return score_SP(gamma, A) / A.width


def score_V2(gamma: ScoringMatrix, A: Alignment) -> Fraction:
    return sum((c / w for c, w in pair_stats(gamma, A) if w), Fraction(0))


def score_V3(gamma: ScoringMatrix, A: Alignment) -> Fraction:
    stats = pair_stats(gamma, A)
    denom = sum(w for _, w in stats)
    if A.width == 0 or denom == 0:
        return Fraction(0)
    return sum((c for c, _ in stats), Fraction(0)) / denom


SCORERS = {
    "a": score_A,
    "n": score_N,
    "sp": score_SP,
    "v1": score_V1,
    "v2": score_V2,
    "v3": score_V3,
}


def score(criterion: str, gamma: ScoringMatrix, A: Alignment) -> Fraction:
    try:
        return SCORERS[criterion](gamma, A)
    except KeyError:
        raise ValidationError(f"unknown criterion {criterion!r}") from None


# -- matrix classes ---------------------------------------------------------


@dataclass(frozen=True)
class MatrixClassReport:
    in_MC: bool
    in_MW: bool
    in_MN: bool
    violations: tuple[tuple[str, tuple[str, ...]], ...] = ()


def classify_matrix(gamma: ScoringMatrix) -> MatrixClassReport:
    """Check membership in the metric class, the class inducing a d_A metric,
    and its subclass inducing a d_N metric.

    Each violation is reported once as ``(condition id, witness symbols)``.
    """
    g = gamma.int_cost  # scale-free comparisons on integer entries
    sigma = gamma.alphabet.symbols
    full = sigma + (GAP,)
    violations: list[tuple[str, tuple[str, ...]]] = []

    mc = True
    for a in full:
        for b in full:
            if a == b:
                if g(a, b) != 0:
                    mc = False
                    violations.append(("MC.a", (a, b)))
            elif g(a, b) <= 0:
                mc = False
                violations.append(("MC.a", (a, b)))
            if a < b and g(a, b) != g(b, a):
                mc = False
                violations.append(("MC.b", (a, b)))
    for a in full:
        for b in full:
            for c in full:
                if g(a, c) > g(a, b) + g(b, c):
                    mc = False
                    violations.append(("MC.c", (a, b, c)))

    mw = True
    for a in sigma:
        if not g(a, GAP) == g(GAP, a) > 0:
            mw = False
            violations.append(("MW.a", (a,)))
        for b in sigma:
            if (a == b and g(a, b) != 0) or (a != b and g(a, b) <= 0):
                mw = False
                violations.append(("MW.b", (a, b)))
            if g(a, b) < g(a, GAP) + g(GAP, b) and g(a, b) != g(b, a):
                mw = False
                violations.append(("MW.c", (a, b)))
            if g(a, GAP) > g(a, b) + g(b, GAP):
                mw = False
                violations.append(("MW.d", (a, b)))
            for c in sigma:
                if min(g(a, c), g(a, GAP) + g(GAP, c)) > g(a, b) + g(b, c):
                    mw = False
                    violations.append(("MW.e", (a, b, c)))

    gap_ok = True
    for a in sigma:
        for b in sigma:
            # witness (a, b): the gap cost of b exceeds twice that of a
            if g(b, GAP) > 2 * g(a, GAP):
                gap_ok = False
                violations.append(("MN.b", (a, b)))

    return MatrixClassReport(mc, mw, mw and gap_ok, tuple(violations))


# -- rendering --------------------------------------------------------------


def render_decimal(x: Fraction, decimals: int = 2, rounding: str = "half-even") -> str:
    """Fixed-point rendering of an exact value; presentation only.

    ``rounding`` is ``"half-even"`` or ``"down"`` (truncation toward zero).
    """
    if decimals < 0:
        raise ValueError("decimals must be non-negative")
    scaled = Fraction(x) * 10**decimals
    if rounding == "half-even":
        q = round(scaled)
    elif rounding == "down":
        q = trunc(scaled)
    else:
        raise ValueError(f"unknown rounding mode {rounding!r}")
    sign = "-" if q < 0 else ""
    q = abs(q)
    if decimals == 0:
        return f"{sign}{q}"
    whole, frac = divmod(q, 10**decimals)
    return f"{sign}{whole}.{frac:0{decimals}d}"
