# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: batched elimination and exhaustive weight enumeration.

All arithmetic goes through dense q-by-q tables, so any GF(p^k) with
q <= TABLE_CAP is supported. Loops run without the GIL.
"""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy

cnp.import_array()


cdef inline int _eliminate(int* A, int k, int m, const int[:, ::1] add,
                           const int[:, ::1] mul, const int[::1] neg,
                           const int[::1] inv, int* last_pivot) noexcept nogil:
    """Forward elimination in place on a row-major k-by-m buffer; returns the rank."""
    cdef int r = 0, c, i, j, piv, f, t
    last_pivot[0] = 0
    for c in range(m):
        if r == k:
            break
        piv = -1
        for i in range(r, k):
            if A[i * m + c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, m):
                t = A[r * m + j]
                A[r * m + j] = A[piv * m + j]
                A[piv * m + j] = t
        f = inv[A[r * m + c]]
        for j in range(c, m):
            A[r * m + j] = mul[f, A[r * m + j]]
        for i in range(r + 1, k):
            f = A[i * m + c]
            if f != 0:
                f = neg[f]
                for j in range(c, m):
                    A[i * m + j] = add[A[i * m + j], mul[f, A[r * m + j]]]
        if c == m - 1:
            last_pivot[0] = 1
        r += 1
    return r


def batch_rank(G, subsets, F):
    cdef const int[:, ::1] g = np.ascontiguousarray(G, dtype=np.int32)
    cdef const cnp.int64_t[:, ::1] sub = np.ascontiguousarray(subsets, dtype=np.int64).reshape(len(subsets), -1)
    cdef const int[:, ::1] add = F.add_table
    cdef const int[:, ::1] mul = F.mul_table
    cdef const int[::1] neg = F.neg_table
    cdef const int[::1] inv = F.inv_table
    cdef Py_ssize_t S = sub.shape[0], s
    cdef int k = g.shape[0], m = sub.shape[1], i, j, lp
    out = np.zeros(S, dtype=np.int64)
    cdef cnp.int64_t[::1] o = out
    if m == 0 or k == 0:
        return out
    cdef int* A = <int*> malloc(k * m * sizeof(int))
    with nogil:
        for s in range(S):
            for i in range(k):
                for j in range(m):
                    A[i * m + j] = g[i, sub[s, j]]
            o[s] = _eliminate(A, k, m, add, mul, neg, inv, &lp)
    free(A)
    return out


def batch_in_span(G, target, subsets, F):
    cdef const int[:, ::1] g = np.ascontiguousarray(G, dtype=np.int32)
    cdef const int[::1] tg = np.ascontiguousarray(target, dtype=np.int32)
    cdef const cnp.int64_t[:, ::1] sub = np.ascontiguousarray(subsets, dtype=np.int64).reshape(len(subsets), -1)
    cdef const int[:, ::1] add = F.add_table
    cdef const int[:, ::1] mul = F.mul_table
    cdef const int[::1] neg = F.neg_table
    cdef const int[::1] inv = F.inv_table
    cdef Py_ssize_t S = sub.shape[0], s
    cdef int k = g.shape[0], m = sub.shape[1] + 1, i, j, lp
    out = np.zeros(S, dtype=bool)
    cdef cnp.npy_bool[::1] o = out
    cdef int* A = <int*> malloc(k * m * sizeof(int))
    with nogil:
        for s in range(S):
            for i in range(k):
                for j in range(m - 1):
                    A[i * m + j] = g[i, sub[s, j]]
                A[i * m + m - 1] = tg[i]
            _eliminate(A, k, m, add, mul, neg, inv, &lp)
            o[s] = lp == 0
    free(A)
    return out


def rref(M, F):
    """Reduced row echelon form; returns ``(R, pivot_columns)``."""
    R = np.array(M, dtype=np.int32, copy=True, order="C")
    cdef int[:, ::1] a = R
    cdef const int[:, ::1] add = F.add_table
    cdef const int[:, ::1] mul = F.mul_table
    cdef const int[::1] neg = F.neg_table
    cdef const int[::1] inv = F.inv_table
    cdef int rows = a.shape[0], cols = a.shape[1], r = 0, c, i, j, piv, f, t
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        with nogil:
            if piv != r:
                for j in range(cols):
                    t = a[r, j]
                    a[r, j] = a[piv, j]
                    a[piv, j] = t
            f = inv[a[r, c]]
            for j in range(cols):
                a[r, j] = mul[f, a[r, j]]
            for i in range(rows):
                if i != r and a[i, c] != 0:
                    f = neg[a[i, c]]
                    for j in range(cols):
                        a[i, j] = add[a[i, j], mul[f, a[r, j]]]
        pivots.append(c)
        r += 1
    return R.astype(np.int64), pivots


def weight_histogram(G, F):
    """Projective weight histogram via a modular p-ary Gray code.

    Each step adds one basis multiple ``x**pos * row`` to the running
    codeword, so the cost is O(N) per codeword.
    """
    cdef const int[:, ::1] g = np.ascontiguousarray(G, dtype=np.int32)
    cdef const int[:, ::1] add = F.add_table
    cdef const int[:, ::1] mul = F.mul_table
    cdef int k = g.shape[0], N = g.shape[1], p = F.p, ext = F.k
    cdef int lead, j, pos, l, D, i0, w, old, new, digit
    cdef long long step, total
    hist = np.zeros(N + 1, dtype=np.int64)
    cdef cnp.int64_t[::1] h = hist
    # steps[(j * ext + pos), :] = p**pos * row j
    steps_np = np.zeros((max(1, k * ext), N), dtype=np.int32)
    cdef int[:, ::1] steps = steps_np
    cdef int unit
    for j in range(k):
        unit = 1
        for pos in range(ext):
            for l in range(N):
                steps[j * ext + pos, l] = mul[unit, g[j, l]]
            unit *= p
    cdef int* cw = <int*> malloc(N * sizeof(int))
    cdef int* ctr = <int*> malloc((k * ext + 1) * sizeof(int))
    with nogil:
        for lead in range(k):
            for l in range(N):
                cw[l] = g[lead, l]
            w = 0
            for l in range(N):
                if cw[l] != 0:
                    w += 1
            h[w] += 1
            D = (k - 1 - lead) * ext
            for i0 in range(D + 1):
                ctr[i0] = 0
            total = 1
            for i0 in range(D):
                total *= p
            step = 1
            while step < total:
                # increment the base-p counter; the lowest digit that does
                # not wrap is the Gray digit that changes
                i0 = 0
                while True:
                    digit = ctr[i0] + 1
                    if digit == p:
                        ctr[i0] = 0
                        i0 += 1
                    else:
                        ctr[i0] = digit
                        break
                # digit i0 -> free row (lead + 1 + i0 // ext), basis pos i0 % ext
                j = (lead + 1 + i0 // ext) * ext + i0 % ext
                for l in range(N):
                    old = cw[l]
                    new = add[old, steps[j, l]]
                    cw[l] = new
                    w += (new != 0) - (old != 0)
                h[w] += 1
                step += 1
    free(cw)
    free(ctr)
    return hist
