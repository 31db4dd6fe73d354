"""numba-compiled kernels.

Every function here has a twin of the same name and contract in ``_numpy``.
Bit ``j`` of a packed row lives in word ``j >> 6`` at position ``j & 63``.
"""

import numpy as np
from numba import njit

_ONE = np.uint64(1)
_ZERO = np.uint64(0)


@njit(cache=True, inline="always")
def _popcount(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return (x * np.uint64(0x0101010101010101)) >> np.uint64(56)


@njit(cache=True)
def rref(words, pivot_limit):
    """Reduced row echelon form; pivots are searched among the first ``pivot_limit`` columns.

    Returns the nonzero reduced rows and their pivot columns.
    """
    R = words.copy()
    m, w = R.shape
    piv = np.empty(min(m, pivot_limit), np.int64)
    r = 0
    for col in range(pivot_limit):
        if r == m:
            break
        wi = col >> 6
        bit = _ONE << np.uint64(col & 63)
        p = -1
        for i in range(r, m):
            if (R[i, wi] & bit) != _ZERO:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for t in range(w):
                tmp = R[r, t]
                R[r, t] = R[p, t]
                R[p, t] = tmp
        for i in range(m):
            if i != r and (R[i, wi] & bit) != _ZERO:
                # row r is zero left of col
                for t in range(wi, w):
                    R[i, t] ^= R[r, t]
        piv[r] = col
        r += 1
    return R[:r].copy(), piv[:r].copy()


@njit(cache=True)
def matmul(a, inner, b):
    m = a.shape[0]
    wb = b.shape[1]
    out = np.zeros((m, wb), np.uint64)
    for i in range(m):
        for t in range(inner):
            if ((a[i, t >> 6] >> np.uint64(t & 63)) & _ONE) != _ZERO:
                for s in range(wb):
                    out[i, s] ^= b[t, s]
    return out


@njit(cache=True)
def last_row_in_span(stack):
    """For each batch entry, is the last row in the span of the rows above it?"""
    nb, m1, w = stack.shape
    out = np.empty(nb, np.bool_)
    work = np.empty((m1, w), np.uint64)
    for b in range(nb):
        for i in range(m1):
            for t in range(w):
                work[i, t] = stack[b, i, t]
        for i in range(m1 - 1):
            wi = -1
            low = _ZERO
            for t in range(w):
                if work[i, t] != _ZERO:
                    wi = t
                    low = work[i, t] & (_ZERO - work[i, t])
                    break
            if wi < 0:
                continue
            for j in range(i + 1, m1):
                if (work[j, wi] & low) != _ZERO:
                    for t in range(w):
                        work[j, t] ^= work[i, t]
        zero = True
        for t in range(w):
            if work[m1 - 1, t] != _ZERO:
                zero = False
                break
        out[b] = zero
    return out


@njit(cache=True, inline="always")
def _rank1(rows, work):
    n = rows.shape[0]
    for i in range(n):
        work[i] = rows[i]
    rank = 0
    for i in range(n):
        v = work[i]
        if v == _ZERO:
            continue
        rank += 1
        low = v & (_ZERO - v)
        for j in range(i + 1, n):
            if (work[j] & low) != _ZERO:
                work[j] ^= v
    return rank


@njit(cache=True)
def min_rank_completion(base, free_row, free_col, floor):
    """Gray-code sweep over all completions of the free entries of ``base``.

    ``base`` holds one single-word row per matrix row.  Returns the minimum
    rank seen and the Gray code of the first completion attaining it; the
    sweep stops as soon as a rank ``<= floor`` appears.
    """
    f = free_row.shape[0]
    cur = base.copy()
    work = np.empty(base.shape[0], np.uint64)
    best = _rank1(cur, work)
    best_code = 0
    if best <= floor:
        return best, best_code
    total = 1 << f
    for i in range(1, total):
        t = 0
        while ((i >> t) & 1) == 0:
            t += 1
        cur[free_row[t]] ^= _ONE << np.uint64(free_col[t])
        rk = _rank1(cur, work)
        if rk < best:
            best = rk
            best_code = i ^ (i >> 1)
            if best <= floor:
                break
    return best, best_code


@njit(cache=True)
def label_adjacency(u, v):
    """Adjacency of label pairs: x ~ y iff <u_x, v_y> = <v_x, u_y> = 0 and x != y."""
    n = u.shape[0]
    out = np.zeros((n, n), np.bool_)
    for x in range(n):
        ux = u[x]
        vx = v[x]
        for y in range(x + 1, n):
            if (_popcount(ux & v[y]) & _ONE) == _ZERO and (_popcount(vx & u[y]) & _ONE) == _ZERO:
                out[x, y] = True
                out[y, x] = True
    return out


@njit(cache=True)
def count_odd_pairs(a, b):
    total = 0
    for i in range(a.shape[0]):
        ai = a[i]
        for j in range(b.shape[0]):
            total += np.int64(_popcount(ai & b[j]) & _ONE)
    return total
