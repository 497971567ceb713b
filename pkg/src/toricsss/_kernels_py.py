"""Pure numpy implementations of the hot kernels.

Same signatures as the compiled ``_kernels`` module; used when the
extension is not built, when ``q`` exceeds the dense-table cap, and as the
reference side of the benchmark.
"""

from __future__ import annotations

import itertools

import numpy as np

CHUNK = 1 << 16


def rref(M, F):
    """Reduced row echelon form over ``F``; returns ``(R, pivot_columns)``."""
    R = np.array(M, dtype=np.int64, copy=True)
    if R.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    rows, cols = R.shape
    r = 0
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r] = F.vmul(R[r], F.inv(int(R[r, c])))
        col = R[:, c].copy()
        col[r] = 0
        mask = col != 0
        if mask.any():
            R[mask] = F.vsub(R[mask], F.vmul(col[mask][:, None], R[r][None, :]))
        pivots.append(c)
        r += 1
    return R, pivots


def _batched_echelon(A, F, track_last=False):
    """Forward elimination on a stack of matrices ``A`` of shape (S, k, m).

    Returns the rank of each matrix; with ``track_last`` also whether the
    final column received a pivot.
    """
    A = A.copy()
    S, k, m = A.shape
    rank = np.zeros(S, dtype=np.int64)
    rows = np.arange(k)
    sidx = np.arange(S)
    last_pivot = np.zeros(S, dtype=bool)
    for c in range(m):
        col = A[:, :, c]
        eligible = (rows[None, :] >= rank[:, None]) & (col != 0)
        has = eligible.any(axis=1) & (rank < k)
        if not has.any():
            continue
        s = sidx[has]
        piv = eligible[has].argmax(axis=1)
        dst = rank[has]
        prow = A[s, piv].copy()
        A[s, piv] = A[s, dst]
        A[s, dst] = prow
        inv = F.vinv(prow[:, c])
        prow = F.vmul(prow, inv[:, None])
        A[s, dst] = prow
        below = rows[None, :] > dst[:, None]
        factors = np.where(below, A[s, :, c], 0)
        A[s] = F.vsub(A[s], F.vmul(factors[:, :, None], prow[:, None, :]))
        rank[has] += 1
        if track_last and c == m - 1:
            last_pivot = has
    if track_last:
        return rank, last_pivot
    return rank


def batch_rank(G, subsets, F):
    G = np.asarray(G, dtype=np.int64)
    subsets = np.asarray(subsets, dtype=np.int64)
    out = np.empty(len(subsets), dtype=np.int64)
    if len(subsets) == 0:
        return out
    if subsets.shape[1] == 0:
        out[:] = 0
        return out
    step = max(1, CHUNK // max(1, G.shape[0] * subsets.shape[1]))
    for lo in range(0, len(subsets), step):
        block = subsets[lo:lo + step]
        A = np.transpose(G[:, block], (1, 0, 2))
        out[lo:lo + step] = _batched_echelon(A, F)
    return out


def batch_in_span(G, target, subsets, F):
    """For each row of ``subsets`` (column indices), is ``target`` in the
    span of those columns of ``G``?"""
    G = np.asarray(G, dtype=np.int64)
    target = np.asarray(target, dtype=np.int64)
    subsets = np.asarray(subsets, dtype=np.int64)
    out = np.empty(len(subsets), dtype=bool)
    if len(subsets) == 0:
        return out
    if subsets.shape[1] == 0:
        out[:] = not target.any()
        return out
    step = max(1, CHUNK // max(1, G.shape[0] * (subsets.shape[1] + 1)))
    for lo in range(0, len(subsets), step):
        block = subsets[lo:lo + step]
        A = np.transpose(G[:, block], (1, 0, 2))
        tcol = np.broadcast_to(target[None, :, None], (len(block), G.shape[0], 1))
        A = np.concatenate([A, tcol], axis=2)
        _, last = _batched_echelon(A, F, track_last=True)
        out[lo:lo + step] = ~last
    return out


def _all_combinations(rows, F):
    """Every F-linear combination of ``rows`` (shape (L, N)); (q^L, N).

    Row order matches ``itertools.product(range(q), repeat=L)`` on the
    coefficient vector.
    """
    N = rows.shape[1]
    table = np.zeros((1, N), dtype=np.int64)
    scal = np.arange(F.q)
    for row in rows:
        multiples = F.vmul(scal[:, None], row[None, :])
        table = F.vadd(table[:, None, :], multiples[None, :, :]).reshape(-1, N)
    return table


def weight_histogram(G, F):
    """Histogram of Hamming weights over projective codewords.

    ``G`` must have full row rank. Entry ``w`` counts the codewords of
    weight ``w`` whose first nonzero message coordinate equals 1, so the
    full distribution is this histogram times ``q - 1`` (weight 0 excluded).
    """
    G = np.asarray(G, dtype=np.int64)
    k, N = G.shape
    q = F.q
    hist = np.zeros(N + 1, dtype=np.int64)
    low_len = 0
    while low_len < k and q ** (low_len + 1) * N <= CHUNK * 16:
        low_len += 1
    for lead in range(k):
        free = G[lead + 1:]
        m = free.shape[0]
        L = min(low_len, m)
        low_rows = free[m - L:] if L else free[:0]
        high_rows = free[: m - L]
        low_table = _all_combinations(low_rows, F)
        for coeffs in itertools.product(range(q), repeat=m - L):
            base = G[lead].copy()
            for c, row in zip(coeffs, high_rows):
                if c:
                    base = F.vadd(base, F.vmul(c, row))
            words = F.vadd(low_table, base[None, :])
            hist += np.bincount(np.count_nonzero(words, axis=1), minlength=N + 1)
    return hist
