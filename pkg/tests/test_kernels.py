"""Backend equivalence: the numba kernels agree with the pure fallback."""

import random

import numpy as np
import pytest

from cnfstruct.kernels import HAVE_NUMBA, get_backend

pure = get_backend("pure")
stacks = [("pure", pure)]
if HAVE_NUMBA:
    stacks.append(("numba", get_backend("numba")))


def _random_incidence(rng, n_vars, n_clauses):
    per_var = [[] for _ in range(n_vars)]
    for b in range(n_clauses):
        k = rng.randint(0, min(4, n_vars))
        for v in rng.sample(range(n_vars), k):
            per_var[v].append(b)
    vptr = np.zeros(n_vars + 1, np.int64)
    for i, r in enumerate(per_var):
        vptr[i + 1] = vptr[i] + len(r)
    vidx = np.array([b for r in per_var for b in r] or [], np.int64)
    return vptr, vidx


def _brute_max_matching(n_vars, n_clauses, vptr, vidx):
    adj = [list(vidx[vptr[v] : vptr[v + 1]]) for v in range(n_vars)]
    match_r = {}

    def aug(v, seen):
        for b in adj[v]:
            if b in seen:
                continue
            seen.add(b)
            if b not in match_r or aug(match_r[b], seen):
                match_r[b] = v
                return True
        return False

    return sum(1 for v in range(n_vars) if aug(v, set()))


@pytest.mark.parametrize("name,backend", stacks)
def test_max_matching_against_brute_force(name, backend):
    rng = random.Random(51)
    for _ in range(120):
        nv = rng.randint(1, 8)
        nc = rng.randint(0, 10)
        vptr, vidx = _random_incidence(rng, nv, nc)
        size, pair_l, pair_r = backend.max_matching(nv, nc, vptr, vidx)
        assert size == _brute_max_matching(nv, nc, vptr, vidx)
        # pairing arrays are a consistent matching
        for v in range(nv):
            b = pair_l[v]
            if b >= 0:
                assert pair_r[b] == v
                assert b in vidx[vptr[v] : vptr[v + 1]]


@pytest.mark.skipif(not HAVE_NUMBA, reason="numba backend unavailable")
def test_backends_agree():
    rng = random.Random(52)
    jit = get_backend("numba")
    for _ in range(60):
        nv = rng.randint(1, 12)
        nc = rng.randint(1, 16)
        vptr, vidx = _random_incidence(rng, nv, nc)
        assert jit.max_matching(nv, nc, vptr, vidx)[0] == pure.max_matching(nv, nc, vptr, vidx)[0]
        assert np.array_equal(
            jit.surplus_values(nv, nc, vptr, vidx), pure.surplus_values(nv, nc, vptr, vidx)
        )
        banned = np.zeros(nc, np.uint8)
        for b in rng.sample(range(nc), nc // 3):
            banned[b] = 1
        skip = rng.randrange(nv)
        assert (
            jit.masked_matching(nv, nc, vptr, vidx, skip, banned)[0]
            == pure.masked_matching(nv, nc, vptr, vidx, skip, banned)[0]
        )
    assert np.array_equal(jit.nm_rec_table(3000), pure.nm_rec_table(3000))
    cap = np.full(1201, 2**62, np.int64)
    cap[1:7] = [2, 4, 5, 6, 8, 8]
    assert np.array_equal(jit.potprec_table(cap, 1200), pure.potprec_table(cap, 1200))


@pytest.mark.skipif(not HAVE_NUMBA, reason="numba backend unavailable")
def test_canonical_encoding_backends_agree():
    from itertools import permutations

    rng = random.Random(53)
    jit = get_backend("numba")
    for n in (1, 2, 3, 4):
        perms = []
        flips = []
        for p in permutations(range(n)):
            for mask in range(1 << n):
                perms.append(p)
                flips.append([(mask >> j) & 1 for j in range(n)])
        perms = np.array(perms, np.int64)
        flips = np.array(flips, np.uint8)
        pow3 = np.array([3 ** (n - 1 - j) for j in range(n)], np.int64)
        for _ in range(30):
            c = rng.randint(1, 10)
            digits = np.array(
                [[rng.choice((0, 1, 2)) for _ in range(n)] for _ in range(c)], np.uint8
            )
            a = jit.canonical_min_encoding(digits, perms, flips, pow3)
            b = pure.canonical_min_encoding(digits, perms, flips, pow3)
            assert np.array_equal(a, b)
