#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure numpy/Python fallback.

Runs each kernel on representative workloads under both backends and prints a
timing table.  Usage:

    python benchmarks/bench_kernels.py [--repeat N]

The active default backend elsewhere in the package is numba unless
CNFSTRUCT_PURE=1 is set; this script always times both explicitly.
"""

import argparse
import random
import time

import numpy as np

from cnfstruct.kernels import HAVE_NUMBA, get_backend


def random_incidence(rng, n_vars, n_clauses, lits_lo=1, lits_hi=5):
    per_var = [[] for _ in range(n_vars)]
    occ = []
    for b in range(n_clauses):
        k = rng.randint(lits_lo, min(lits_hi, n_vars))
        for v in rng.sample(range(n_vars), k):
            per_var[v].append(b)
        occ.append(b)
    vptr = np.zeros(n_vars + 1, np.int64)
    for i, r in enumerate(per_var):
        vptr[i + 1] = vptr[i] + len(r)
    vidx = np.array([b for r in per_var for b in r], np.int64)
    return vptr, vidx


def random_digits(rng, n, c):
    digits = np.full((c, n), 2, np.uint8)
    for ci in range(c):
        for col in range(n):
            digits[ci, col] = rng.choice((0, 1, 2))
    return digits


def bench(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    rng = random.Random(0)
    vptr, vidx = random_incidence(rng, 40, 160)
    big_vptr, big_vidx = random_incidence(rng, 200, 800)
    cap = np.full(4001, 2**62, np.int64)
    cap[1] = 2

    from itertools import permutations

    n_iso = 4
    perms = []
    flips = []
    for p in permutations(range(n_iso)):
        for mask in range(1 << n_iso):
            perms.append(p)
            flips.append([(mask >> j) & 1 for j in range(n_iso)])
    perms = np.array(perms, np.int64)
    flips = np.array(flips, np.uint8)
    pow3 = np.array([3 ** (n_iso - 1 - j) for j in range(n_iso)], np.int64)
    digit_sets = [random_digits(rng, n_iso, 12) for _ in range(200)]

    workloads = [
        ("max_matching 200x800", lambda K: K.max_matching(200, 800, big_vptr, big_vidx)),
        ("surplus_values 40x160", lambda K: K.surplus_values(40, 160, vptr, vidx)),
        ("nm_rec_table 10^4", lambda K: K.nm_rec_table(10**4)),
        ("potprec_table 4000", lambda K: K.potprec_table(cap, 4000)),
        (
            "canonical_min x200 (n=4)",
            lambda K: [K.canonical_min_encoding(d, perms, flips, pow3) for d in digit_sets],
        ),
    ]

    backends = ["pure"] + (["numba"] if HAVE_NUMBA else [])
    mods = {name: get_backend(name) for name in backends}
    if "numba" in mods:
        # warm the JIT outside the timed region
        for _, fn in workloads:
            fn(mods["numba"])

    width = max(len(w) for w, _ in workloads)
    header = f"{'workload':<{width}}  " + "  ".join(f"{b:>10}" for b in backends)
    if len(backends) == 2:
        header += f"  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, fn in workloads:
        times = {b: bench(lambda m=mods[b]: fn(m), args.repeat) for b in backends}
        row = f"{name:<{width}}  " + "  ".join(f"{times[b] * 1e3:9.2f}ms" for b in backends)
        if len(backends) == 2:
            row += f"  {times['pure'] / times['numba']:7.1f}x"
        print(row)

    for name in backends[1:]:
        ref = mods["pure"]
        other = mods[name]
        assert np.array_equal(
            ref.nm_rec_table(2000), other.nm_rec_table(2000)
        ), "backend disagreement on the recursion table"
        assert np.array_equal(
            ref.surplus_values(40, 160, vptr, vidx),
            other.surplus_values(40, 160, vptr, vidx),
        ), "backend disagreement on surplus values"
    print("backend agreement checks passed")


if __name__ == "__main__":
    main()
