"""Shared fixtures and independent brute-force oracles.

The oracles never call the code paths they check: surplus and maximal
deficiency enumerate subsets directly, matching-autarky existence enumerates
partial assignments with its own tiny augmenting-path matcher, and the
factorial two-adic valuation comes from the Legendre sum.
"""

from __future__ import annotations

import random
from itertools import combinations, product

import pytest

from cnfstruct.core import MultiClauseSet, as_multi, clause, restrict, variables


def mcs(*clauses_with_mult) -> MultiClauseSet:
    """Terse literal-list constructor: mcs([1,2], ([1], 2)) etc."""
    entries = []
    for item in clauses_with_mult:
        if isinstance(item, tuple) and len(item) == 2 and isinstance(item[1], int) and (
            isinstance(item[0], (list, tuple))
        ):
            entries.append((clause(item[0]), item[1]))
        else:
            entries.append((clause(item), 1))
    return MultiClauseSet(entries)


def cs(*clauses_) -> frozenset:
    return frozenset(clause(c) for c in clauses_)


def brute_delta_star(F) -> int:
    """Max deficiency over sub-multi-clause-sets, by occurrence subsets."""
    M = as_multi(F)
    occs = list(M.occurrences())
    best = 0
    for r in range(len(occs) + 1):
        for sub in combinations(range(len(occs)), r):
            chosen = [occs[i] for i in sub]
            vs = {abs(x) for C in chosen for x in C}
            best = max(best, len(chosen) - len(vs))
    return best


def brute_surplus(F) -> int:
    """Min of delta(F[V]) over nonempty V, by full subset enumeration."""
    M = as_multi(F)
    vs = sorted(variables(M))
    assert vs, "brute surplus needs variables"
    best = None
    for r in range(1, len(vs) + 1):
        for V in combinations(vs, r):
            Vs = set(V)
            c = sum(M[C] for C in M if any(abs(x) in Vs for x in C))
            d = c - r
            best = d if best is None else min(best, d)
    return best


def brute_minimal_witnesses(F) -> set:
    """All inclusion-minimal nonempty V attaining the surplus."""
    M = as_multi(F)
    vs = sorted(variables(M))
    sigma = brute_surplus(M)
    hits = []
    for r in range(1, len(vs) + 1):
        for V in combinations(vs, r):
            Vs = set(V)
            c = sum(M[C] for C in M if any(abs(x) in Vs for x in C))
            if c - r == sigma:
                hits.append(frozenset(V))
    return {V for V in hits if not any(W < V for W in hits)}


def _injective_satisfier_exists(touched, assignment) -> bool:
    """Tiny augmenting-path matcher: each touched clause needs its own
    assigned variable whose literal it contains satisfied."""
    sat_vars = [
        [abs(x) for x in C if assignment.get(abs(x)) == (1 if x > 0 else 0)]
        for C in touched
    ]
    match: dict = {}

    def try_assign(i, seen):
        for v in sat_vars[i]:
            if v in seen:
                continue
            seen.add(v)
            if v not in match or try_assign(match[v], seen):
                match[v] = i
                return True
        return False

    return all(try_assign(i, set()) for i in range(len(touched)))


def brute_matching_autarkies(F) -> list:
    """All nontrivial matching autarkies, by assignment enumeration."""
    M = as_multi(F)
    vs = sorted(variables(M))
    out = []
    for values in product((None, 0, 1), repeat=len(vs)):
        assignment = {v: e for v, e in zip(vs, values) if e is not None}
        if not assignment:
            continue
        touched = [C for C in M if any(abs(x) in assignment for x in C)]
        satisfied = all(
            any(assignment.get(abs(x)) == (1 if x > 0 else 0) for x in C)
            for C in touched
        )
        if not satisfied:
            continue
        touched_occ = []
        for C in touched:
            touched_occ.extend([C] * M[C])
        if _injective_satisfier_exists(touched_occ, assignment):
            out.append(assignment)
    return out


def brute_has_matching_autarky(F) -> bool:
    return bool(brute_matching_autarkies(F))


def brute_has_autarky(F) -> bool:
    """Existence of any nontrivial autarky by assignment enumeration."""
    M = as_multi(F)
    vs = sorted(variables(M))
    for values in product((None, 0, 1), repeat=len(vs)):
        assignment = {v: e for v, e in zip(vs, values) if e is not None}
        if not assignment:
            continue
        ok = all(
            any(assignment.get(abs(x)) == (1 if x > 0 else 0) for x in C)
            for C in M
            if any(abs(x) in assignment for x in C)
        )
        if ok:
            return True
    return False


def legendre_s2(k: int) -> int:
    """Least s with 2^k dividing s!, via the Legendre valuation sum."""

    def val2_factorial(s: int) -> int:
        total, p = 0, 2
        while p <= s:
            total += s // p
            p *= 2
        return total

    s = 1
    while val2_factorial(s) < k:
        s += 1
    return s


def random_mcs(rng: random.Random, max_vars=8, max_clauses=14, allow_bot=True) -> MultiClauseSet:
    n = rng.randint(1, max_vars)
    c = rng.randint(1, max_clauses)
    out = []
    if allow_bot and rng.random() < 0.05:
        out.append(())
    for _ in range(c):
        k = rng.randint(1, min(4, n))
        vs = rng.sample(range(1, n + 1), k)
        out.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
    if rng.random() < 0.25:
        out.append(out[rng.randrange(len(out))])
    return MultiClauseSet.from_clauses(out)


def restricted_surplus(F, V) -> int:
    from cnfstruct.matching import surplus

    return surplus(restrict(F, V)).value


@pytest.fixture(scope="session")
def catalogs():
    """All default catalogs n = 1..4, computed once per test session."""
    from cnfstruct.enumeration import cached_catalog

    return {n: cached_catalog(n) for n in range(1, 5)}
