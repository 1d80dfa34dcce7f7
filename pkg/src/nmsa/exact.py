"""Exact dynamic programs over prefix vectors.

``msa_exact`` minimizes the SP-score, ``nmsa1_exact`` / ``nmsa3_exact`` add a
length layer (alignment width, resp. summed induced widths) and divide at
the end, and ``nmsa2_exact`` runs one SP-array program per candidate
induced-length vector. Table fills live in :mod:`nmsa._kernels`; tracebacks
are done here and always prefer the largest column mask among ties.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, lcm, prod
from typing import Sequence

from . import _kernels
from .core import GAP, Alignment, KSequence, alignment_from_bitvectors, mask_to_bits
from .errors import (
    AlphabetMismatch,
    ArityMismatch,
    LengthVectorOutOfRange,
    ResourceCapExceeded,
    ValidationError,
)
from .scoring import MatrixArray, ScoringMatrix

log = logging.getLogger(__name__)

DEFAULT_MAX_CELLS = 10**8


@dataclass(frozen=True)
class ExactResult:
    value: Fraction
    alignment: Alignment
    method: str
    cells_computed: int = 0
    stats: dict = field(default_factory=dict, compare=False)


class _Problem:
    """Integer encoding of (S, per-pair costs) shared by all programs."""

    def __init__(self, S: KSequence, gamma: ScoringMatrix | MatrixArray):
        if S.k < 2:
            raise ValidationError("exact alignment needs k >= 2")
        self.S = S
        self.k = S.k
        self.dims = list(S.lengths)
        self.pairs = list(combinations(range(self.k), 2))
        if isinstance(gamma, MatrixArray):
            if gamma.k != S.k:
                raise ArityMismatch(f"matrix array is for k={gamma.k}, input has k={S.k}")
            mats = [gamma[p] for p in self.pairs]
        else:
            mats = [gamma] * len(self.pairs)
        first = mats[0]
        self.gap = first.gap_index
        try:
            self.codes = [first.encode(s) for s in S.sequences]
        except ValidationError as exc:
            raise AlphabetMismatch(str(exc)) from None
        self.denominator = lcm(*(m.denominator for m in mats))
        self.cost = [
            [[x * (self.denominator // m.denominator) for x in row] for row in m.entries]
            for m in mats
        ]
        self.n_total = sum(self.dims)
        self.strides = [1] * self.k
        for h in range(1, self.k):
            self.strides[h] = self.strides[h - 1] * (self.dims[h - 1] + 1)
        self.size = prod(d + 1 for d in self.dims)
        self.offsets = [
            sum(self.strides[h] for h in range(self.k) if b >> h & 1) for b in range(1 << self.k)
        ]

    def max_entry(self, cost=None):
        cost = self.cost if cost is None else cost
        return max((x for m in cost for row in m for x in row), default=0)

    def column_cost(self, v, b, cost=None):
        cost = self.cost if cost is None else cost
        g = self.gap
        total = 0
        for p, (h, i) in enumerate(self.pairs):
            x = self.codes[h][v[h] - 1] if b >> h & 1 else g
            y = self.codes[i][v[i] - 1] if b >> i & 1 else g
            total += cost[p][x][y]
        return total

    def masks_desc(self, v):
        avail = sum(1 << h for h in range(self.k) if v[h] > 0)
        for b in range((1 << self.k) - 1, 0, -1):
            if not b & ~avail:
                yield b

    def build(self, cols):
        return alignment_from_bitvectors(self.S, [mask_to_bits(b, self.k) for b in cols])

    def empty_alignment(self):
        return Alignment(tuple("" for _ in range(self.k)))


def _guard(estimate, max_cells):
    if max_cells is not None and estimate > max_cells:
        raise ResourceCapExceeded(estimate, max_cells)


def _pair_step(k, b):
    """Summed induced-width increment of column b: pairs with b_h or b_i set."""
    return sum(1 for h, i in combinations(range(k), 2) if b >> h & 1 or b >> i & 1)


def _trace_sp(prob: _Problem, D):
    v = list(prob.dims)
    idx = prob.size - 1
    cols = []
    while idx:
        cur = int(D[idx])
        for b in prob.masks_desc(v):
            prev = int(D[idx - prob.offsets[b]])
            if prev >= 0 and prev + prob.column_cost(v, b) == cur:
                break
        else:  # pragma: no cover - table inconsistency
            raise RuntimeError("traceback failed")
        cols.append(b)
        idx -= prob.offsets[b]
        for h in range(prob.k):
            v[h] -= b >> h & 1
    cols.reverse()
    return prob.build(cols)


def _run_sp(prob: _Problem, max_cells, method):
    _guard(prob.size, max_cells)
    bound = prob.max_entry() * len(prob.pairs) * max(prob.n_total, 1)
    D = _kernels.pick(bound).fill_sp(prob.dims, prob.codes, prob.gap, prob.cost)
    value = Fraction(int(D[prob.size - 1]), prob.denominator)
    return ExactResult(value, _trace_sp(prob, D), method, prob.size)


def msa_exact(S: KSequence, gamma: ScoringMatrix, max_cells: int | None = DEFAULT_MAX_CELLS):
    """Minimum SP-score over all alignments of ``S`` with an optimal alignment."""
    return _run_sp(_Problem(S, gamma), max_cells, "msa_exact")


def msa_exact_array(S: KSequence, gammas: MatrixArray, max_cells: int | None = DEFAULT_MAX_CELLS):
    """Like :func:`msa_exact` with a separate matrix for every pair of rows."""
    if not isinstance(gammas, MatrixArray):
        raise ArityMismatch("msa_exact_array needs a MatrixArray")
    return _run_sp(_Problem(S, gammas), max_cells, "msa_exact_array")


def _layered(prob: _Problem, step, lmax, max_cells, method):
    cells = (lmax + 1) * prob.size
    _guard(cells, max_cells)
    if prob.n_total == 0:
        return ExactResult(Fraction(0), prob.empty_alignment(), method, cells)
    bound = prob.max_entry() * len(prob.pairs) * prob.n_total
    D = _kernels.pick(bound).fill_layered(
        prob.dims, prob.codes, prob.gap, prob.cost, step, lmax
    )
    W = lmax + 1
    last = (prob.size - 1) * W
    best = best_L = None
    for L in range(1, W):
        d = int(D[last + L])
        if d < 0:
            continue
        val = Fraction(d, prob.denominator * L)
        if best is None or val < best:
            best, best_L = val, L

    v = list(prob.dims)
    idx, L = prob.size - 1, best_L
    cols = []
    while idx:
        cur = int(D[idx * W + L])
        for b in prob.masks_desc(v):
            sb = step[b]
            if sb > L:
                continue
            prev = int(D[(idx - prob.offsets[b]) * W + L - sb])
            if prev >= 0 and prev + prob.column_cost(v, b) == cur:
                break
        else:  # pragma: no cover
            raise RuntimeError("traceback failed")
        cols.append(b)
        idx -= prob.offsets[b]
        L -= step[b]
        for h in range(prob.k):
            v[h] -= b >> h & 1
    cols.reverse()
    return ExactResult(best, prob.build(cols), method, cells, {"length": best_L})


def nmsa1_exact(S: KSequence, gamma: ScoringMatrix, max_cells: int | None = DEFAULT_MAX_CELLS):
    """Minimum of SP-score / alignment width.

    The table covers widths 0..N with N the total sequence length, i.e.
    ``(N + 1) * prod(n_i + 1)`` cells.
    """
    prob = _Problem(S, gamma)
    step = [1] * (1 << prob.k)
    return _layered(prob, step, prob.n_total, max_cells, "nmsa1_exact")


def nmsa3_exact(S: KSequence, gamma: ScoringMatrix, max_cells: int | None = DEFAULT_MAX_CELLS):
    """Minimum of SP-score / summed induced pair widths.

    A column b adds ``C(k,2)`` minus the number of pairs gapped in both rows
    to the summed width, which ranges over 0..(k-1)N.
    """
    prob = _Problem(S, gamma)
    step = [0] + [_pair_step(prob.k, b) for b in range(1, 1 << prob.k)]
    return _layered(prob, step, (prob.k - 1) * prob.n_total, max_cells, "nmsa3_exact")


# -- NMSA-2 -----------------------------------------------------------------


def induced_length_space(n: Sequence[int]) -> list[int]:
    """Upper bound ``n_h + n_i`` of each coordinate of the induced-length space."""
    return [n[h] + n[i] for h, i in combinations(range(len(n)), 2)]


def _iter_box(upper):
    v = [0] * len(upper)
    for _ in range(prod(u + 1 for u in upper)):
        yield tuple(v)
        for p in range(len(upper)):
            if v[p] < upper[p]:
                v[p] += 1
                break
            v[p] = 0


def rip_plausible(n: Sequence[int], L: Sequence[int]) -> bool:
    """Cheap necessary condition: 0 <= M(h,i) <= min(n_h, n_i) for every pair."""
    for (h, i), l in zip(combinations(range(len(n)), 2), L):
        m = n[h] + n[i] - l
        if m < 0 or m > min(n[h], n[i]):
            return False
    return True


def _weighted_cost(prob: _Problem, target):
    """Integer per-pair costs for gamma x target on a common denominator."""
    scale = lcm(*(l for l in target if l > 0)) if any(target) else 1
    cost = [
        [[x * (scale // l) for x in row] for row in m] if l > 0 else [[0] * len(m[0]) for _ in m]
        for m, l in zip(prob.cost, target)
    ]
    return cost, prob.denominator * scale


def _fill_induced(prob: _Problem, target):
    cost, denom = _weighted_cost(prob, target)
    bound = prob.max_entry(cost) * len(prob.pairs) * max(prob.n_total, 1)
    D = _kernels.pick(bound).fill_induced(prob.dims, prob.codes, prob.gap, cost, list(target))
    return D, cost, denom


def nmsa2_inner(S: KSequence, gamma: ScoringMatrix, target: Sequence[int]) -> Fraction | None:
    """Best SP-array score under ``gamma x target`` among alignments whose
    induced lengths equal ``target``; ``None`` when no such alignment exists."""
    prob = _Problem(S, gamma)
    _check_lengths(S.lengths, target)
    D, _, denom = _fill_induced(prob, target)
    d = int(D[len(D) - 1])
    return None if d < 0 else Fraction(d, denom)


def nmsa2_cells(n: Sequence[int]) -> int:
    """Total cells over all inner tables when every length vector is evaluated."""
    return prod(x + 1 for x in n) * prod((m + 1) * (m + 2) // 2 for m in induced_length_space(n))


def nmsa2_exact(
    S: KSequence,
    gamma: ScoringMatrix,
    max_cells: int | None = DEFAULT_MAX_CELLS,
    prune: bool = True,
):
    """Minimum over all alignments of the sum of pairwise normalized scores.

    For every candidate induced-length vector the SP-array program with
    matrices ``gamma / L_hi`` is solved on a table restricted to lengths
    ``<= L``; the overall minimum is exact. ``prune`` skips vectors that fail
    :func:`rip_plausible` and does not change the result.
    """
    prob = _Problem(S, gamma)
    upper = induced_length_space(S.lengths)
    outer = prod(u + 1 for u in upper)
    if prune:
        targets = [t for t in _iter_box(upper) if rip_plausible(S.lengths, t)]
        _guard(prob.size * sum(prod(l + 1 for l in t) for t in targets), max_cells)
    else:
        _guard(nmsa2_cells(S.lengths), max_cells)
        targets = _iter_box(upper)
    if prob.n_total == 0:
        return ExactResult(Fraction(0), prob.empty_alignment(), "nmsa2_exact", prob.size,
                           {"outer_iterations": outer, "evaluated": 1, "length_vector": tuple(upper)})

    best = best_target = None
    cells = evaluated = 0
    for target in targets:
        evaluated += 1
        cells += prob.size * prod(l + 1 for l in target)
        D, _, denom = _fill_induced(prob, target)
        d = int(D[len(D) - 1])
        if d < 0:
            continue
        val = Fraction(d, denom)
        if best is None or val < best:
            best, best_target = val, target
    log.debug("nmsa2: %d of %d length vectors evaluated", evaluated, outer)

    D, cost, _ = _fill_induced(prob, best_target)
    P = len(prob.pairs)
    lstrides = [1] * P
    for p in range(1, P):
        lstrides[p] = lstrides[p - 1] * (best_target[p - 1] + 1)
    lsize = lstrides[-1] * (best_target[-1] + 1)
    v = list(prob.dims)
    Lv = list(best_target)
    idx, lidx = prob.size - 1, lsize - 1
    cols = []
    while idx:
        cur = int(D[idx * lsize + lidx])
        for b in prob.masks_desc(v):
            touched = [p for p, (h, i) in enumerate(prob.pairs) if b >> h & 1 or b >> i & 1]
            if any(Lv[p] == 0 for p in touched):
                continue
            plidx = lidx - sum(lstrides[p] for p in touched)
            prev = int(D[(idx - prob.offsets[b]) * lsize + plidx])
            if prev >= 0 and prev + prob.column_cost(v, b, cost) == cur:
                break
        else:  # pragma: no cover
            raise RuntimeError("traceback failed")
        cols.append(b)
        idx -= prob.offsets[b]
        lidx = plidx
        for p in touched:
            Lv[p] -= 1
        for h in range(prob.k):
            v[h] -= b >> h & 1
    cols.reverse()
    stats = {"outer_iterations": outer, "evaluated": evaluated, "length_vector": tuple(best_target)}
    return ExactResult(best, prob.build(cols), "nmsa2_exact", cells, stats)


# -- induced-length feasibility ----------------------------------------------


@dataclass(frozen=True)
class EailResult:
    feasible: bool
    columns: tuple[tuple[int, ...], ...] | None
    rip: tuple[tuple[int, ...], ...]

    def witness_rows(self, symbol: str = "x") -> tuple[str, ...] | None:
        """Alignment shape of the witness, sequence symbols drawn as ``symbol``."""
        if self.columns is None:
            return None
        k = len(self.rip)
        return tuple(
            "".join(symbol if col[h] else GAP for col in self.columns) for h in range(k)
        )


def _check_lengths(n, L):
    k = len(n)
    if any(x < 0 for x in n):
        raise LengthVectorOutOfRange("sequence lengths must be non-negative")
    if len(L) != comb(k, 2):
        raise LengthVectorOutOfRange(f"need {comb(k, 2)} induced lengths for k={k}, got {len(L)}")
    for (h, i), l in zip(combinations(range(k), 2), L):
        if not 0 <= l <= n[h] + n[i]:
            raise LengthVectorOutOfRange(
                f"L_{h + 1}{i + 1}={l} outside [0, {n[h] + n[i]}]"
            )


def eail_to_rip(n: Sequence[int], L: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """Intersection-size matrix: n_h on the diagonal, n_h + n_i - L_hi elsewhere."""
    _check_lengths(n, L)
    k = len(n)
    M = [[0] * k for _ in range(k)]
    for h in range(k):
        M[h][h] = n[h]
    for (h, i), l in zip(combinations(range(k), 2), L):
        M[h][i] = M[i][h] = n[h] + n[i] - l
    return tuple(tuple(r) for r in M)


def eail_check(n: Sequence[int], L: Sequence[int], max_states: int | None = 10**7) -> EailResult:
    """Decide by backtracking whether some alignment shape has induced lengths ``L``.

    Exponential; failed states are memoized.
    """
    n = tuple(n)
    L = tuple(L)
    rip = eail_to_rip(n, L)
    k = len(n)
    ps = list(combinations(range(k), 2))
    estimate = prod(x + 1 for x in n) * prod(l + 1 for l in L)
    if max_states is not None and estimate > max_states:
        raise ResourceCapExceeded(estimate, max_states, what="states")

    masks = list(range((1 << k) - 1, 0, -1))
    failed: set[tuple] = set()
    path: list[int] = []

    def ok(v, lv):
        return all(max(v[h], v[i]) <= l <= v[h] + v[i] for (h, i), l in zip(ps, lv))

    def search(v, lv):
        if not any(v):
            return not any(lv)
        key = (v, lv)
        if key in failed or not ok(v, lv):
            return False
        for b in masks:
            if any(b >> h & 1 and v[h] == 0 for h in range(k)):
                continue
            nv = tuple(v[h] - (b >> h & 1) for h in range(k))
            nl = tuple(l - (1 if (b >> h & 1 or b >> i & 1) else 0) for (h, i), l in zip(ps, lv))
            if min(nl, default=0) < 0:
                continue
            path.append(b)
            if search(nv, nl):
                return True
            path.pop()
        failed.add(key)
        return False

    if search(n, L):
        cols = tuple(mask_to_bits(b, k) for b in reversed(path))
        return EailResult(True, cols, rip)
    return EailResult(False, None, rip)
