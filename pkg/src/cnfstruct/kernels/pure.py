"""Pure backend: numpy vectorisation where it pays, plain Python elsewhere.

Mirrors the numba backend function for function; graph search is plain Python
(it does not vectorise), the table fills and the canonical-form scan are
vectorised numpy.
"""

import numpy as np

INF = 2**62


def _hk(nl, nr, ptr, idx, skip_left, banned, pair_l, pair_r):
    for u in range(nl):
        pair_l[u] = -1
    for b in range(nr):
        pair_r[b] = -1
    size = 0
    for u in range(nl):
        if u == skip_left:
            continue
        for j in range(ptr[u], ptr[u + 1]):
            b = idx[j]
            if not banned[b] and pair_r[b] < 0:
                pair_l[u] = b
                pair_r[b] = u
                size += 1
                break
    dist = [0] * nl
    while True:
        queue = []
        for u in range(nl):
            if u != skip_left and pair_l[u] < 0:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = INF
        found = False
        qh = 0
        while qh < len(queue):
            u = queue[qh]
            qh += 1
            for j in range(ptr[u], ptr[u + 1]):
                b = idx[j]
                if banned[b]:
                    continue
                w = pair_r[b]
                if w < 0:
                    found = True
                elif dist[w] == INF:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        if not found:
            break
        for u0 in range(nl):
            if u0 == skip_left or pair_l[u0] >= 0:
                continue
            su = [u0]
            sj = [ptr[u0]]
            sv = [-1]
            while su:
                u = su[-1]
                j = sj[-1]
                pick = -1
                down = -1
                while j < ptr[u + 1]:
                    b = idx[j]
                    j += 1
                    if banned[b]:
                        continue
                    w = pair_r[b]
                    if w < 0:
                        pick = b
                        break
                    if dist[w] == dist[u] + 1:
                        pick = b
                        down = w
                        break
                sj[-1] = j
                if pick < 0:
                    dist[u] = INF
                    su.pop()
                    sj.pop()
                    sv.pop()
                elif down < 0:
                    sv[-1] = pick
                    for uu, bb in zip(su, sv):
                        pair_l[uu] = bb
                        pair_r[bb] = uu
                    size += 1
                    break
                else:
                    sv[-1] = pick
                    su.append(down)
                    sj.append(ptr[down])
                    sv.append(-1)
    return size


def max_matching(nl, nr, ptr, idx):
    pair_l = np.empty(nl, np.int64)
    pair_r = np.empty(nr, np.int64)
    banned = np.zeros(nr, np.uint8)
    size = _hk(nl, nr, ptr, idx, -1, banned, pair_l, pair_r)
    return int(size), pair_l, pair_r


def masked_matching(nl, nr, ptr, idx, skip_left, banned):
    pair_l = np.empty(nl, np.int64)
    pair_r = np.empty(nr, np.int64)
    size = _hk(nl, nr, ptr, idx, skip_left, banned, pair_l, pair_r)
    return int(size), pair_l, pair_r


def surplus_values(nl, nr, vptr, vidx):
    out = np.empty(nl, np.int64)
    banned = np.zeros(nr, np.uint8)
    pair_l = np.empty(nl, np.int64)
    pair_r = np.empty(nr, np.int64)
    for v in range(nl):
        for j in range(vptr[v], vptr[v + 1]):
            banned[vidx[j]] = 1
        nu = _hk(nl, nr, vptr, vidx, v, banned, pair_l, pair_r)
        out[v] = (vptr[v + 1] - vptr[v]) + nu - nl
        for j in range(vptr[v], vptr[v + 1]):
            banned[vidx[j]] = 0
    return out


def nm_rec_table(K):
    vals = np.zeros(K + 1, np.int64)
    if K >= 1:
        vals[1] = 2
    for k in range(2, K + 1):
        i = np.arange(2, k + 1, dtype=np.int64)
        vals[k] = np.minimum(2 * i, vals[1:k][::-1] + i).max()
    return vals


def potprec_table(cap, K):
    vals = np.zeros(K + 1, np.int64)
    if K >= 1:
        vals[1] = 2

    def nonempty(k, m):
        e0 = np.arange(max(2, m - k), m // 2 + 1, dtype=np.int64)
        if e0.size == 0:
            return False
        e1 = m - e0
        ok = (vals[k - e0 + 1] + e0 >= m) & (vals[k - e1 + 1] + e1 >= m)
        return bool(ok.any())

    for k in range(2, K + 1):
        lo, hi = 4, 2 * k
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if nonempty(k, mid):
                lo = mid
            else:
                hi = mid - 1
        vals[k] = min(lo, int(cap[k]))
    return vals


def canonical_min_encoding(digits, perms, flips, pow3):
    c, _ = digits.shape
    if c == 0:
        return np.empty(0, np.int64)
    A = digits[None, :, :].astype(np.int64)  # (1, c, n)
    FL = flips[:, None, :].astype(bool)  # (T, 1, n)
    flipped = np.where((A < 2) & FL, 1 - A, A)  # (T, c, n)
    weights = pow3[perms]  # (T, n)
    enc = (flipped * weights[:, None, :]).sum(axis=2)  # (T, c)
    enc.sort(axis=1)
    first = np.lexsort(enc[:, ::-1].T)[0]
    return enc[first].copy()
