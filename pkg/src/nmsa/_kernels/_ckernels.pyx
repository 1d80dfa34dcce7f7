# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled table fills. Same conventions and results as ``_pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()

cdef enum:
    MAXK = 16
    MAXP = 120

INFEASIBLE = -1


cdef void _layout(const int64_t[:] dims, int64_t* strides, int64_t* size) noexcept nogil:
    cdef Py_ssize_t h, k = dims.shape[0]
    strides[0] = 1
    for h in range(1, k):
        strides[h] = strides[h - 1] * (dims[h - 1] + 1)
    size[0] = strides[k - 1] * (dims[k - 1] + 1)


cdef inline bint _advance(const int64_t[:] dims, const int64_t[:, :] codes, int64_t gap,
                          int64_t* v, int64_t* syms, int64_t* avail) noexcept nogil:
    cdef Py_ssize_t h, k = dims.shape[0]
    for h in range(k):
        if v[h] < dims[h]:
            v[h] += 1
            syms[h] = codes[h, v[h] - 1]
            avail[0] |= (<int64_t>1) << h
            return True
        v[h] = 0
        syms[h] = gap
        avail[0] &= ~((<int64_t>1) << h)
    return False


cdef void _column_costs(int k, int64_t* syms, int64_t avail, int64_t gap,
                        const int64_t[:, :, :] cost, int* ph, int* pi, int P,
                        int64_t* out) noexcept nogil:
    cdef int64_t b, c, x, y
    cdef int p
    for b in range(1, (<int64_t>1) << k):
        if b & ~avail:
            out[b] = -1
            continue
        c = 0
        for p in range(P):
            x = syms[ph[p]] if (b >> ph[p]) & 1 else gap
            y = syms[pi[p]] if (b >> pi[p]) & 1 else gap
            c += cost[p, x, y]
        out[b] = c


cdef int _pairs(int k, int* ph, int* pi):
    cdef int h, i, p = 0
    for h in range(k):
        for i in range(h + 1, k):
            ph[p] = h
            pi[p] = i
            p += 1
    return p


def _prepare(dims, codes, cost):
    dims_a = np.ascontiguousarray(dims, dtype=np.int64)
    k = dims_a.shape[0]
    if k < 1 or k > MAXK:
        raise ValueError(f"k must be in 1..{MAXK}")
    width = max(1, int(dims_a.max()))
    codes_a = np.zeros((k, width), dtype=np.int64)
    for h in range(k):
        row = list(codes[h])
        if row:
            codes_a[h, :len(row)] = row
    cost_a = np.ascontiguousarray(cost, dtype=np.int64)
    if cost_a.ndim != 3:
        cost_a = cost_a.reshape((0, 1, 1))
    return dims_a, codes_a, cost_a


def fill_sp(dims, codes, gap, cost):
    dims_a, codes_a, cost_a = _prepare(dims, codes, cost)
    cdef const int64_t[:] d = dims_a
    cdef const int64_t[:, :] cd = codes_a
    cdef const int64_t[:, :, :] cs = cost_a
    cdef int k = d.shape[0]
    cdef int ph[MAXP]
    cdef int pi[MAXP]
    cdef int P = _pairs(k, ph, pi)
    cdef int64_t strides[MAXK]
    cdef int64_t size
    _layout(d, strides, &size)
    cdef int64_t nmask = (<int64_t>1) << k
    offsets_a = np.zeros(nmask, dtype=np.int64)
    cc_a = np.zeros(nmask, dtype=np.int64)
    cdef int64_t[:] offsets = offsets_a
    cdef int64_t[:] cc = cc_a
    cdef int64_t b, idx, c, prev, val, best, g = gap
    cdef int h
    for b in range(1, nmask):
        for h in range(k):
            if (b >> h) & 1:
                offsets[b] += strides[h]
    D_a = np.full(size, -1, dtype=np.int64)
    cdef int64_t[:] D = D_a
    cdef int64_t v[MAXK]
    cdef int64_t syms[MAXK]
    cdef int64_t avail = 0
    for h in range(k):
        v[h] = 0
        syms[h] = g
    D[0] = 0
    with nogil:
        for idx in range(1, size):
            _advance(d, cd, g, v, syms, &avail)
            _column_costs(k, syms, avail, g, cs, ph, pi, P, &cc[0])
            best = -1
            for b in range(1, nmask):
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
    return D_a


def fill_layered(dims, codes, gap, cost, step, int64_t lmax):
    dims_a, codes_a, cost_a = _prepare(dims, codes, cost)
    cdef const int64_t[:] d = dims_a
    cdef const int64_t[:, :] cd = codes_a
    cdef const int64_t[:, :, :] cs = cost_a
    step_a = np.ascontiguousarray(step, dtype=np.int64)
    cdef const int64_t[:] st = step_a
    cdef int k = d.shape[0]
    cdef int ph[MAXP]
    cdef int pi[MAXP]
    cdef int P = _pairs(k, ph, pi)
    cdef int64_t strides[MAXK]
    cdef int64_t size
    _layout(d, strides, &size)
    cdef int64_t nmask = (<int64_t>1) << k
    offsets_a = np.zeros(nmask, dtype=np.int64)
    cc_a = np.zeros(nmask, dtype=np.int64)
    cdef int64_t[:] offsets = offsets_a
    cdef int64_t[:] cc = cc_a
    cdef int64_t b, idx, c, prev, val, cur, sb, L, base, pbase, lo, g = gap
    cdef int64_t W = lmax + 1
    cdef int h
    for b in range(1, nmask):
        for h in range(k):
            if (b >> h) & 1:
                offsets[b] += strides[h]
    D_a = np.full(size * W, -1, dtype=np.int64)
    cdef int64_t[:] D = D_a
    cdef int64_t v[MAXK]
    cdef int64_t syms[MAXK]
    cdef int64_t avail = 0
    for h in range(k):
        v[h] = 0
        syms[h] = g
    D[0] = 0
    with nogil:
        for idx in range(1, size):
            _advance(d, cd, g, v, syms, &avail)
            _column_costs(k, syms, avail, g, cs, ph, pi, P, &cc[0])
            base = idx * W
            for b in range(1, nmask):
                c = cc[b]
                if c < 0:
                    continue
                sb = st[b]
                pbase = (idx - offsets[b]) * W
                lo = sb if sb > 1 else 1
                for L in range(lo, W):
                    prev = D[pbase + L - sb]
                    if prev < 0:
                        continue
                    val = prev + c
                    cur = D[base + L]
                    if cur < 0 or val < cur:
                        D[base + L] = val
    return D_a


def fill_induced(dims, codes, gap, cost, target):
    dims_a, codes_a, cost_a = _prepare(dims, codes, cost)
    cdef const int64_t[:] d = dims_a
    cdef const int64_t[:, :] cd = codes_a
    cdef const int64_t[:, :, :] cs = cost_a
    target_a = np.ascontiguousarray(target, dtype=np.int64)
    cdef const int64_t[:] tg = target_a
    cdef int k = d.shape[0]
    cdef int ph[MAXP]
    cdef int pi[MAXP]
    cdef int P = _pairs(k, ph, pi)
    if P > 62:
        raise ValueError("too many pairs for the induced-length kernel")
    cdef int64_t strides[MAXK]
    cdef int64_t size
    _layout(d, strides, &size)
    cdef int64_t nmask = (<int64_t>1) << k
    cdef int64_t lstrides[MAXP]
    cdef int64_t lsize = 1
    cdef int p
    for p in range(P):
        lstrides[p] = lsize
        lsize *= tg[p] + 1
    offsets_a = np.zeros(nmask, dtype=np.int64)
    touched_a = np.zeros(nmask, dtype=np.int64)
    loff_a = np.zeros(nmask, dtype=np.int64)
    cc_a = np.zeros(nmask, dtype=np.int64)
    zeros_a = np.zeros(lsize, dtype=np.int64)
    cdef int64_t[:] offsets = offsets_a
    cdef int64_t[:] touched = touched_a
    cdef int64_t[:] loff = loff_a
    cdef int64_t[:] cc = cc_a
    cdef int64_t[:] zeros = zeros_a
    cdef int64_t b, idx, c, prev, val, cur, tb, lidx, base, pbase, zm, g = gap
    cdef int h
    for b in range(1, nmask):
        for h in range(k):
            if (b >> h) & 1:
                offsets[b] += strides[h]
        for p in range(P):
            if (b >> ph[p]) & 1 or (b >> pi[p]) & 1:
                touched[b] |= (<int64_t>1) << p
                loff[b] += lstrides[p]
    cdef int64_t lv[MAXP]
    for p in range(P):
        lv[p] = 0
    zm = ((<int64_t>1) << P) - 1
    zeros[0] = zm
    for lidx in range(1, lsize):
        for p in range(P):
            if lv[p] < tg[p]:
                lv[p] += 1
                zm &= ~((<int64_t>1) << p)
                break
            lv[p] = 0
            zm |= (<int64_t>1) << p
        zeros[lidx] = zm
    D_a = np.full(size * lsize, -1, dtype=np.int64)
    cdef int64_t[:] D = D_a
    cdef int64_t v[MAXK]
    cdef int64_t syms[MAXK]
    cdef int64_t avail = 0
    for h in range(k):
        v[h] = 0
        syms[h] = g
    D[0] = 0
    with nogil:
        for idx in range(1, size):
            _advance(d, cd, g, v, syms, &avail)
            _column_costs(k, syms, avail, g, cs, ph, pi, P, &cc[0])
            base = idx * lsize
            for b in range(1, nmask):
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
    return D_a
