"""Numba backend: JIT-compiled loops over CSR-style int64 arrays."""

import numpy as np
from numba import njit

INF = np.int64(2**62)


@njit(cache=True)
def _hk(nl, nr, ptr, idx, skip_left, banned, pair_l, pair_r):
    # Hopcroft-Karp: greedy seed, then layered BFS + iterative DFS phases.
    # skip_left < 0 means no left vertex is excluded; banned flags right
    # vertices that may not be used.  Deterministic in vertex/index order.
    dist = np.empty(nl, np.int64)
    queue = np.empty(nl, np.int64)
    su = np.empty(nl + 1, np.int64)
    sj = np.empty(nl + 1, np.int64)
    sv = np.empty(nl + 1, np.int64)
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
            if banned[b] == 0 and pair_r[b] < 0:
                pair_l[u] = b
                pair_r[b] = u
                size += 1
                break
    while True:
        qh = 0
        qt = 0
        for u in range(nl):
            if u != skip_left and pair_l[u] < 0:
                dist[u] = 0
                queue[qt] = u
                qt += 1
            else:
                dist[u] = INF
        found = False
        while qh < qt:
            u = queue[qh]
            qh += 1
            for j in range(ptr[u], ptr[u + 1]):
                b = idx[j]
                if banned[b] != 0:
                    continue
                w = pair_r[b]
                if w < 0:
                    found = True
                elif dist[w] == INF:
                    dist[w] = dist[u] + 1
                    queue[qt] = w
                    qt += 1
        if not found:
            break
        for u0 in range(nl):
            if u0 == skip_left or pair_l[u0] >= 0:
                continue
            top = 0
            su[0] = u0
            sj[0] = ptr[u0]
            while top >= 0:
                u = su[top]
                j = sj[top]
                pick = np.int64(-1)
                down = np.int64(-1)
                while j < ptr[u + 1]:
                    b = idx[j]
                    j += 1
                    if banned[b] != 0:
                        continue
                    w = pair_r[b]
                    if w < 0:
                        pick = b
                        break
                    if dist[w] == dist[u] + 1:
                        pick = b
                        down = w
                        break
                sj[top] = j
                if pick < 0:
                    dist[u] = INF
                    top -= 1
                elif down < 0:
                    sv[top] = pick
                    for i in range(top, -1, -1):
                        pair_l[su[i]] = sv[i]
                        pair_r[sv[i]] = su[i]
                    size += 1
                    break
                else:
                    sv[top] = pick
                    top += 1
                    su[top] = down
                    sj[top] = ptr[down]
    return size


def max_matching(nl, nr, ptr, idx):
    """Maximum matching size plus the pairing arrays (-1 = unmatched)."""
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


@njit(cache=True)
def _surplus_scan(nl, nr, vptr, vidx, out):
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


def surplus_values(nl, nr, vptr, vidx):
    """min over V containing v of delta(F[V]), for every variable index v.

    Uses the identity: the minimum equals vdeg(v) plus the maximum matching of
    the incidence graph with v and its clause occurrences removed, minus the
    number of variables.
    """
    out = np.empty(nl, np.int64)
    _surplus_scan(nl, nr, vptr, vidx, out)
    return out


@njit(cache=True)
def _nm_rec_fill(vals, K):
    vals[1] = 2
    for k in range(2, K + 1):
        best = np.int64(0)
        for i in range(2, k + 1):
            a = 2 * i
            b = vals[k - i + 1] + i
            m = a if a < b else b
            if m > best:
                best = m
        vals[k] = best


def nm_rec_table(K):
    """Table of the degree-bound recursion for arguments 1..K (index 0 unused)."""
    vals = np.zeros(K + 1, np.int64)
    if K >= 1:
        _nm_rec_fill(vals, K)
    return vals


@njit(cache=True)
def _potp_nonempty(vals, k, m):
    e0 = m - k if m - k > 2 else 2
    while 2 * e0 <= m:
        e1 = m - e0
        if vals[k - e0 + 1] + e0 >= m and vals[k - e1 + 1] + e1 >= m:
            return True
        e0 += 1
    return False


@njit(cache=True)
def _potprec_fill(cap, vals, K):
    vals[1] = 2
    for k in range(2, K + 1):
        # largest m in [4, 2k] with a potential degree-pair; nonemptiness is
        # monotone downward in m, so binary search applies
        lo = np.int64(4)
        hi = np.int64(2 * k)
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if _potp_nonempty(vals, k, mid):
                lo = mid
            else:
                hi = mid - 1
        vals[k] = lo if lo < cap[k] else cap[k]


def potprec_table(cap, K):
    """Values 1..K of the bounds-improvement operator.

    ``cap`` holds the input bounds function with a huge sentinel for its
    +infinity tail, 1-indexed and of length >= K+1.
    """
    vals = np.zeros(K + 1, np.int64)
    if K >= 1:
        _potprec_fill(cap, vals, K)
    return vals


@njit(cache=True)
def _canonical_scan(digits, perms, flips, pow3, best, enc):
    T = perms.shape[0]
    c = digits.shape[0]
    n = digits.shape[1]
    for t in range(T):
        for ci in range(c):
            e = np.int64(0)
            for col in range(n):
                d = digits[ci, col]
                if d < 2 and flips[t, col] == 1:
                    d = 1 - d
                e += d * pow3[perms[t, col]]
            enc[ci] = e
        enc[:c].sort()
        if t == 0:
            for ci in range(c):
                best[ci] = enc[ci]
        else:
            smaller = False
            for ci in range(c):
                if enc[ci] < best[ci]:
                    smaller = True
                    break
                if enc[ci] > best[ci]:
                    break
            if smaller:
                for ci in range(c):
                    best[ci] = enc[ci]


def canonical_min_encoding(digits, perms, flips, pow3):
    """Lexicographically minimal sorted encoding over all transforms.

    ``digits[ci, col]`` is 0/1/2 for negative/positive/absent occurrence of
    variable ``col`` in clause ``ci``; a transform sends column ``col`` to
    ``perms[t, col]`` and flips its sign when ``flips[t, col]`` is set.
    """
    c = digits.shape[0]
    best = np.empty(c, np.int64)
    enc = np.empty(c, np.int64)
    _canonical_scan(digits, perms, flips, pow3, best, enc)
    return best
