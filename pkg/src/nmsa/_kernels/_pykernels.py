"""Pure-Python table fills. Reference semantics for the compiled kernels.

Shared conventions (identical in ``_ckernels.pyx``):

* ``dims[h]`` is the length of sequence h; prefix vectors are flattened
  row-major with the first coordinate fastest (stride 1), so flat order is
  the lexicographic order used by the recurrences.
* ``codes[h][j]`` is the symbol code of ``s_h(j+1)``; ``gap`` is the gap code.
* ``cost[p][x][y]`` is the integer cost table of pair p, pairs enumerated
  (0,1), (0,2), ..., (k-2,k-1); ``cost[p][gap][gap]`` must be 0.
* Column masks b run over 1 .. 2**k - 1 (bit h set iff b_h = 1).
* ``-1`` marks an infeasible entry. Costs are non-negative, so the marker
  never takes part in arithmetic.
"""

from __future__ import annotations

from itertools import combinations

INFEASIBLE = -1


def _layout(dims):
    k = len(dims)
    strides = [1] * k
    for h in range(1, k):
        strides[h] = strides[h - 1] * (dims[h - 1] + 1)
    size = strides[-1] * (dims[-1] + 1) if k else 1
    offsets = [0] * (1 << k)
    for b in range(1, 1 << k):
        offsets[b] = sum(strides[h] for h in range(k) if b >> h & 1)
    return strides, size, offsets


def _column_costs(k, syms, avail, gap, cost, pair_list):
    """Cost of every column mask b <= avail at the current prefix vector."""
    nmask = 1 << k
    out = [INFEASIBLE] * nmask
    for b in range(1, nmask):
        if b & ~avail:
            continue
        c = 0
        for p, (h, i) in enumerate(pair_list):
            x = syms[h] if b >> h & 1 else gap
            y = syms[i] if b >> i & 1 else gap
            c += cost[p][x][y]
        out[b] = c
    return out


def _walk(dims, codes, gap):
    """Yield (flat index, symbols at v, availability mask) for every v != 0."""
    k = len(dims)
    v = [0] * k
    syms = [gap] * k
    avail = 0
    idx = 0
    _, size, _ = _layout(dims)
    for idx in range(1, size):
        for h in range(k):
            if v[h] < dims[h]:
                v[h] += 1
                syms[h] = codes[h][v[h] - 1]
                avail |= 1 << h
                break
            v[h] = 0
            syms[h] = gap
            avail &= ~(1 << h)
        yield idx, syms, avail


def fill_sp(dims, codes, gap, cost):
    """D(v) = min over b of D(v - b) + column cost. Returns the flat table."""
    k = len(dims)
    pair_list = list(combinations(range(k), 2))
    _, size, offsets = _layout(dims)
    D = [INFEASIBLE] * size
    D[0] = 0
    for idx, syms, avail in _walk(dims, codes, gap):
        cc = _column_costs(k, syms, avail, gap, cost, pair_list)
        best = INFEASIBLE
        for b in range(1, 1 << k):
            c = cc[b]
            if c < 0:
                continue
            prev = D[idx - offsets[b]]
            if prev < 0:
                continue
            val = prev + c
            if best < 0 or val < best:
                best = val
        D[idx] = best
    return D


def fill_layered(dims, codes, gap, cost, step, lmax):
    """D(v, L) over L = 0..lmax, each column advancing L by ``step[b]``.

    Flat index is ``vidx * (lmax + 1) + L``.
    """
    k = len(dims)
    pair_list = list(combinations(range(k), 2))
    _, size, offsets = _layout(dims)
    W = lmax + 1
    D = [INFEASIBLE] * (size * W)
    D[0] = 0
    for idx, syms, avail in _walk(dims, codes, gap):
        cc = _column_costs(k, syms, avail, gap, cost, pair_list)
        base = idx * W
        for b in range(1, 1 << k):
            c = cc[b]
            if c < 0:
                continue
            sb = step[b]
            pbase = (idx - offsets[b]) * W
            for L in range(max(sb, 1), W):
                prev = D[pbase + L - sb]
                if prev < 0:
                    continue
                val = prev + c
                cur = D[base + L]
                if cur < 0 or val < cur:
                    D[base + L] = val
    return D


def fill_induced(dims, codes, gap, cost, target):
    """D(v, L) with L ranging over the box 0 <= L_p <= target[p].

    A column b decrements L_p for every pair p touched by b (b_h or b_i set).
    Flat index is ``vidx * lsize + lidx`` with L flattened first-pair fastest.
    """
    k = len(dims)
    pair_list = list(combinations(range(k), 2))
    P = len(pair_list)
    _, size, offsets = _layout(dims)
    lstrides = [1] * P
    for p in range(1, P):
        lstrides[p] = lstrides[p - 1] * (target[p - 1] + 1)
    lsize = lstrides[-1] * (target[-1] + 1) if P else 1
    touched = [0] * (1 << k)
    loff = [0] * (1 << k)
    for b in range(1, 1 << k):
        for p, (h, i) in enumerate(pair_list):
            if b >> h & 1 or b >> i & 1:
                touched[b] |= 1 << p
                loff[b] += lstrides[p]
    # zero mask of every L in the box, pairs with L_p == 0
    zeros = [0] * lsize
    lv = [0] * P
    zm = (1 << P) - 1
    zeros[0] = zm
    for lidx in range(1, lsize):
        for p in range(P):
            if lv[p] < target[p]:
                lv[p] += 1
                zm &= ~(1 << p)
                break
            lv[p] = 0
            zm |= 1 << p
        zeros[lidx] = zm

    D = [INFEASIBLE] * (size * lsize)
    D[0] = 0
    for idx, syms, avail in _walk(dims, codes, gap):
        cc = _column_costs(k, syms, avail, gap, cost, pair_list)
        base = idx * lsize
        for b in range(1, 1 << k):
            c = cc[b]
            if c < 0:
                continue
            tb = touched[b]
            pbase = (idx - offsets[b]) * lsize - loff[b]
            for lidx in range(lsize):
                if zeros[lidx] & tb:
                    continue
                prev = D[pbase + lidx]
                if prev < 0:
                    continue
                val = prev + c
                cur = D[base + lidx]
                if cur < 0 or val < cur:
                    D[base + lidx] = val
    return D
