"""Sequences, alignments, induced alignments and k-vector machinery.

Index vectors and bit vectors are plain tuples of ints. Internally every
index (row, column, sequence position) is 0-based; only file formats and
error messages use 1-based numbering.

Bit vectors are also handled as integer masks (bit ``h`` set iff ``b[h] == 1``).
With that encoding the lexicographic order on k-vectors (compare at the
highest differing index) coincides with integer order on masks, which is
what the dynamic programs rely on for tie-breaking.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import prod
from typing import Iterable, Iterator, Sequence

from .errors import (
    AllGapColumn,
    BitExceedsIndex,
    BitSumMismatch,
    EmptyIndexSet,
    IndexOutOfRange,
    RowMismatchesSequence,
    UnequalRowLengths,
    ValidationError,
    ZeroColumn,
)

GAP = "-"


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple[str, ...]

    def __post_init__(self):
        symbols = tuple(self.symbols)
        object.__setattr__(self, "symbols", symbols)
        if not symbols:
            raise ValidationError("alphabet is empty")
        if len(set(symbols)) != len(symbols):
            raise ValidationError("alphabet has duplicate symbols")
        for s in symbols:
            if len(s) != 1 or not s.isprintable() or s.isspace():
                raise ValidationError(f"invalid alphabet symbol {s!r}")
            if s == GAP:
                raise ValidationError("gap character cannot be an alphabet symbol")

    def __len__(self):
        return len(self.symbols)

    def __contains__(self, symbol):
        return symbol in self.symbols

    def index(self, symbol):
        return self.symbols.index(symbol)

    def check(self, seq: str):
        for ch in seq:
            if ch not in self.symbols:
                raise ValidationError(f"symbol {ch!r} not in alphabet")


@dataclass(frozen=True)
class KSequence:
    """A k-tuple of sequences, k >= 1. Empty sequences are allowed."""

    sequences: tuple[str, ...]
    alphabet: Alphabet | None = None

    def __post_init__(self):
        seqs = tuple(self.sequences)
        object.__setattr__(self, "sequences", seqs)
        if not seqs:
            raise ValidationError("a k-sequence needs k >= 1")
        for s in seqs:
            if GAP in s:
                raise ValidationError("sequences may not contain the gap character")
            if self.alphabet is not None:
                self.alphabet.check(s)

    @property
    def k(self) -> int:
        return len(self.sequences)

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.sequences)

    @property
    def total_length(self) -> int:
        return sum(self.lengths)

    def is_empty(self) -> bool:
        return all(len(s) == 0 for s in self.sequences)

    def subset(self, indices: Sequence[int]) -> "KSequence":
        return KSequence(tuple(self.sequences[i] for i in indices), self.alphabet)

    def __getitem__(self, i):
        return self.sequences[i]

    def __len__(self):
        return len(self.sequences)

    def __iter__(self):
        return iter(self.sequences)


@dataclass(frozen=True)
class Alignment:
    """Gap-padded rows of equal width with no all-gap column.

    Constructing an ``Alignment`` checks the structural conditions; use
    :func:`validate_alignment` to also check the rows against a k-sequence.
    """

    rows: tuple[str, ...]

    def __post_init__(self):
        rows = tuple(self.rows)
        object.__setattr__(self, "rows", rows)
        if not rows:
            raise ValidationError("an alignment needs at least one row")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise UnequalRowLengths(f"row lengths differ: {[len(r) for r in rows]}")
        for j in range(width):
            if all(r[j] == GAP for r in rows):
                raise AllGapColumn(j + 1)

    @classmethod
    def _trusted(cls, rows: tuple[str, ...]) -> "Alignment":
        # skips the O(k * width) checks; callers guarantee validity
        obj = object.__new__(cls)
        object.__setattr__(obj, "rows", rows)
        return obj

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def width(self) -> int:
        return len(self.rows[0])

    def __len__(self):
        return self.width

    def column(self, j: int) -> tuple[str, ...]:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> Iterator[tuple[str, ...]]:
        return zip(*self.rows)

    def sequences(self) -> tuple[str, ...]:
        return tuple(r.replace(GAP, "") for r in self.rows)

    def ksequence(self, alphabet: Alphabet | None = None) -> KSequence:
        return KSequence(self.sequences(), alphabet)

    def __str__(self):
        return "\n".join(self.rows)


def validate_alignment(rows: Sequence[str], S: KSequence) -> Alignment:
    if len(rows) != S.k:
        raise ValidationError(f"expected {S.k} rows, got {len(rows)}")
    A = Alignment(tuple(rows))
    for h, (row, seq) in enumerate(zip(A.rows, S.sequences)):
        if row.replace(GAP, "") != seq:
            raise RowMismatchesSequence(f"row {h + 1} does not degap to sequence {h + 1}")
    n = S.lengths
    if not max(n) <= A.width <= sum(n):
        raise ValidationError(f"width {A.width} outside [{max(n)}, {sum(n)}]")
    return A


def induced_alignment(A: Alignment, indices: Iterable[int]) -> Alignment:
    """Rows ``indices`` of ``A`` with all-gap columns removed."""
    idx = list(indices)
    if not idx:
        raise EmptyIndexSet("index set is empty")
    if any(b <= a for a, b in zip(idx, idx[1:])):
        raise ValidationError("indices must be strictly increasing")
    if idx[0] < 0 or idx[-1] >= A.k:
        raise IndexOutOfRange(f"indices {idx} out of range for k={A.k}")
    sub = [A.rows[i] for i in idx]
    keep = [j for j in range(A.width) if any(r[j] != GAP for r in sub)]
    return Alignment._trusted(tuple("".join(r[j] for j in keep) for r in sub))


def induced_width(A: Alignment, h: int, i: int) -> int:
    rh, ri = A.rows[h], A.rows[i]
    return sum(1 for x, y in zip(rh, ri) if x != GAP or y != GAP)


def induced_lengths(A: Alignment) -> tuple[int, ...]:
    """Widths of all pairwise induced alignments, pairs in (0,1), (0,2), ... order."""
    return tuple(induced_width(A, h, i) for h, i in combinations(range(A.k), 2))


# -- k-vectors ------------------------------------------------------------


def bits_to_mask(bits: Sequence[int]) -> int:
    mask = 0
    for h, b in enumerate(bits):
        if b not in (0, 1):
            raise ValidationError(f"bit vector entries must be 0/1, got {b}")
        if b:
            mask |= 1 << h
    return mask


def mask_to_bits(mask: int, k: int) -> tuple[int, ...]:
    return tuple((mask >> h) & 1 for h in range(k))


def column_from_bits(S: KSequence, j: Sequence[int], b: Sequence[int]) -> tuple[str, ...]:
    """The column ``b . S(j)``: entry h is ``s_h(j_h)`` when ``b_h = 1``, else a gap."""
    if len(j) != S.k or len(b) != S.k:
        raise ValidationError("vector length must equal k")
    col = []
    for h, (jh, bh) in enumerate(zip(j, b)):
        if bh > jh:
            raise BitExceedsIndex(f"b[{h + 1}]={bh} exceeds j[{h + 1}]={jh}")
        if jh > len(S.sequences[h]):
            raise IndexOutOfRange(f"j[{h + 1}]={jh} exceeds sequence length")
        col.append(S.sequences[h][jh - 1] if bh else GAP)
    return tuple(col)


def alignment_from_bitvectors(S: KSequence, bits: Sequence[Sequence[int]]) -> Alignment:
    """Rebuild an alignment from its column-defining bit vectors, first column first."""
    k = S.k
    cursor = [0] * k
    rows: list[list[str]] = [[] for _ in range(k)]
    for j, b in enumerate(bits):
        if len(b) != k:
            raise ValidationError(f"bit vector {j + 1} has length {len(b)}, expected {k}")
        if not any(b):
            raise ZeroColumn(f"bit vector {j + 1} is all zero")
        for h in range(k):
            if b[h]:
                if cursor[h] >= len(S.sequences[h]):
                    raise BitSumMismatch(f"sequence {h + 1} over-consumed")
                rows[h].append(S.sequences[h][cursor[h]])
                cursor[h] += 1
            else:
                rows[h].append(GAP)
    if tuple(cursor) != S.lengths:
        raise BitSumMismatch(f"bit vectors sum to {cursor}, expected {list(S.lengths)}")
    return Alignment._trusted(tuple("".join(r) for r in rows))


def column_bitvectors(A: Alignment) -> list[tuple[int, ...]]:
    return [tuple(int(x != GAP) for x in col) for col in A.columns()]


def iterate_index_vectors(n: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """All ``j <= n`` in lexicographic order (first coordinate varies fastest)."""
    if any(x < 0 for x in n):
        raise ValidationError("lengths must be non-negative")
    k = len(n)
    v = [0] * k
    for _ in range(prod(x + 1 for x in n)):
        yield tuple(v)
        for h in range(k):
            if v[h] < n[h]:
                v[h] += 1
                break
            v[h] = 0


def precedes(a: Sequence[int], b: Sequence[int]) -> bool:
    """True when ``a`` comes before ``b``: they agree above some index l and a_l < b_l."""
    for x, y in zip(reversed(a), reversed(b)):
        if x != y:
            return x < y
    return False


def pairs(k: int) -> list[tuple[int, int]]:
    return list(combinations(range(k), 2))
