"""Pure-numpy kernels, same contracts as ``_numba``."""

import numpy as np

_ONE = np.uint64(1)
_ZERO = np.uint64(0)
_CHUNK = 1 << 15


def rref(words, pivot_limit):
    R = np.array(words, dtype=np.uint64, copy=True)
    m = R.shape[0]
    piv = []
    r = 0
    for col in range(pivot_limit):
        if r == m:
            break
        wi = col >> 6
        sh = np.uint64(col & 63)
        cand = np.flatnonzero((R[r:, wi] >> sh) & _ONE)
        if cand.size == 0:
            continue
        p = r + int(cand[0])
        if p != r:
            R[[r, p]] = R[[p, r]]
        hit = ((R[:, wi] >> sh) & _ONE).astype(bool)
        hit[r] = False
        R[hit] ^= R[r]
        piv.append(col)
        r += 1
    return R[:r].copy(), np.array(piv, dtype=np.int64)


def matmul(a, inner, b):
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.uint64)
    for t in range(inner):
        sel = ((a[:, t >> 6] >> np.uint64(t & 63)) & _ONE).astype(bool)
        if sel.any():
            out[sel] ^= b[t]
    return out


def last_row_in_span(stack):
    work = np.array(stack, dtype=np.uint64, copy=True)
    nb, m1, w = work.shape
    if nb == 0:
        return np.zeros(0, dtype=bool)
    batch = np.arange(nb)
    for i in range(m1 - 1):
        row = work[:, i, :]
        nonzero = row != 0
        has = nonzero.any(axis=1)
        if not has.any():
            continue
        wi = nonzero.argmax(axis=1)
        word = row[batch, wi]
        low = np.zeros((nb, w), dtype=np.uint64)
        low[batch, wi] = np.where(has, word & (_ZERO - word), _ZERO)
        for j in range(i + 1, m1):
            hit = ((work[:, j, :] & low) != 0).any(axis=1)
            if hit.any():
                work[hit, j, :] ^= row[hit]
    return ~(work[:, m1 - 1, :] != 0).any(axis=1)


def _batch_rank1(mats):
    work = mats.copy()
    rank = np.zeros(work.shape[0], dtype=np.int64)
    n = work.shape[1]
    for i in range(n):
        v = work[:, i]
        rank += v != 0
        low = v & (_ZERO - v)
        for j in range(i + 1, n):
            hit = (work[:, j] & low) != 0
            work[hit, j] ^= v[hit]
    return rank


def min_rank_completion(base, free_row, free_col, floor):
    base = np.asarray(base, dtype=np.uint64)
    f = len(free_row)
    total = 1 << f
    best = None
    best_code = 0
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        codes = idx ^ (idx >> 1)
        mats = np.repeat(base[None, :], idx.size, axis=0)
        for t in range(f):
            on = ((codes >> t) & 1).astype(np.uint64)
            mats[:, free_row[t]] ^= on << np.uint64(free_col[t])
        ranks = _batch_rank1(mats)
        low = np.flatnonzero(ranks <= floor)
        if low.size:
            j = int(low[0])
            return int(ranks[j]), int(codes[j])
        j = int(ranks.argmin())
        if best is None or ranks[j] < best:
            best, best_code = int(ranks[j]), int(codes[j])
    return best, best_code


def label_adjacency(u, v):
    u = np.asarray(u, dtype=np.uint64)
    v = np.asarray(v, dtype=np.uint64)
    n = u.size
    out = np.empty((n, n), dtype=bool)
    step = max(1, (1 << 22) // max(n, 1))
    for s in range(0, n, step):
        e = min(n, s + step)
        a = np.bitwise_count(u[s:e, None] & v[None, :]) & 1
        b = np.bitwise_count(v[s:e, None] & u[None, :]) & 1
        out[s:e] = (a == 0) & (b == 0)
    np.fill_diagonal(out, False)
    return out


def count_odd_pairs(a, b):
    a = np.asarray(a, dtype=np.uint64)
    b = np.asarray(b, dtype=np.uint64)
    total = 0
    step = max(1, (1 << 22) // max(b.size, 1))
    for s in range(0, a.size, step):
        total += int((np.bitwise_count(a[s:s + step, None] & b[None, :]) & 1).sum())
    return total
