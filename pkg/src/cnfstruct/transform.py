"""Structure-preserving transformations and extremal-family generators.

Saturation drives a minimally unsatisfiable clause-set to a saturated one by
adding literal occurrences while preserving unsatisfiability; singular
DP-reduction eliminates variables occurring once in one sign; singular
extensions and full singular unit-extension invert it; full subsumption
resolution/extension trade a clause R for the pair R+v, R+(-v).  The
generators produce the named witness families used throughout the test and
verification suites.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .bounds import nA, ParameterOutOfRange
from .classify import is_mu, is_satisfiable
from .core import (
    as_clause_set,
    clause,
    degrees,
    fresh_variable,
    sorted_clauses,
    variables,
)
from .errors import NotMU, PreconditionViolated, VariableCollision


@dataclass(frozen=True)
class SaturationTrace:
    steps: tuple  # of (clause, added literal)
    result: frozenset


def saturate_step(F, C, x: int):
    """Add literal x to clause C if the result stays unsatisfiable.

    Returns the new clause-set, or None when the addition would make the set
    satisfiable (i.e. the step is not a valid partial saturation).
    """
    S = as_clause_set(F)
    C = clause(C)
    if C not in S:
        raise PreconditionViolated("clause to saturate is not in the clause-set")
    if abs(x) not in variables(S) or abs(x) in {abs(y) for y in C}:
        raise PreconditionViolated(
            "added literal must use a variable of F outside the clause"
        )
    candidate = (S - {C}) | {clause(C + (x,))}
    return None if is_satisfiable(candidate) else frozenset(candidate)


def saturate(F) -> SaturationTrace:
    """Saturate a minimally unsatisfiable clause-set.

    Deterministic scan order: clauses canonically, candidate variables
    ascending, positive literal first; restart after every applied step.
    """
    S = as_clause_set(F)
    if not is_mu(S):
        raise NotMU("saturation is defined on minimally unsatisfiable input")
    steps = []
    while True:
        applied = False
        for C in sorted_clauses(S):
            cvars = {abs(y) for y in C}
            for v in sorted(variables(S) - cvars):
                for x in (v, -v):
                    nxt = saturate_step(S, C, x)
                    if nxt is not None:
                        steps.append((C, x))
                        S = nxt
                        applied = True
                        break
                if applied:
                    break
            if applied:
                break
        if not applied:
            return SaturationTrace(tuple(steps), S)


def _singular_variables(S) -> list:
    out = []
    for v in sorted(variables(S)):
        pos, neg, _ = degrees(S, v)
        if pos >= 1 and neg >= 1 and min(pos, neg) == 1:
            out.append(v)
    return out


def singular_dp_reduce(F) -> frozenset:
    """Eliminate singular variables (lowest index first) until none remain.

    Deficiency is invariant; minimal unsatisfiability, saturatedness and
    hittingness are preserved, and the minimum variable degree never drops.
    The final clause-set is not unique for deficiency >= 3, hence the fixed
    variable order.
    """
    from .core import dp_reduce, measures

    S = as_clause_set(F)
    if not is_mu(S):
        raise NotMU("singular DP-reduction is defined on minimally unsatisfiable input")
    while True:
        sing = _singular_variables(S)
        if not sing:
            return S
        before = measures(S).delta
        S = dp_reduce(S, sing[0])
        assert measures(S).delta == before, "singular DP-reduction must keep delta"


def singular_extension(G, v: int, ds, c, splits, positive: bool = True) -> frozenset:
    """Singular m-extension of G with fresh variable v.

    ``ds`` are m distinct clauses of G, ``c`` a subset of their intersection,
    ``splits`` the clauses D_i' with (D_i minus c) <= D_i' <= D_i.  The new
    clause c+x joins the weakened clauses D_i'+(-x); DP-reduction on v gives
    back G.
    """
    S = as_clause_set(G)
    if v in variables(S):
        raise VariableCollision(f"extension variable {v} already occurs")
    ds = [clause(D) for D in ds]
    if len(set(ds)) != len(ds) or not ds or len(ds) > len(S):
        raise PreconditionViolated("need 1 <= m <= c(G) distinct side clauses")
    if any(D not in S for D in ds):
        raise PreconditionViolated("side clauses must belong to G")
    c = clause(c)
    inter = set(ds[0])
    for D in ds[1:]:
        inter &= set(D)
    if not set(c) <= inter:
        raise PreconditionViolated("kept clause must lie in the intersection of the side clauses")
    splits = [clause(D) for D in splits]
    if len(splits) != len(ds):
        raise PreconditionViolated("one split clause per side clause")
    for D, Dp in zip(ds, splits):
        if not (set(D) - set(c) <= set(Dp) <= set(D)):
            raise PreconditionViolated(f"split {Dp} must satisfy D - c <= D' <= D for D = {D}")
    x = v if positive else -v
    new = {clause(c + (x,))}
    for Dp in splits:
        new.add(clause(Dp + (-x,)))
    if len(new) != len(ds) + 1:
        raise PreconditionViolated("split clauses must stay pairwise distinct")
    return frozenset((S - set(ds)) | new)


def full_singular_unit_extension(F, x: int) -> frozenset:
    """Add {x} and the literal -x to every clause (x over a fresh variable).

    Preserves deficiency, surplus (away from {bot}), min-var-degree (for
    n > 0), satisfiability status, and MU/SMU/hitting membership.
    """
    S = as_clause_set(F)
    if abs(x) in variables(S):
        raise VariableCollision(f"unit-extension variable {abs(x)} already occurs")
    out = {clause([x])}
    for C in S:
        out.add(clause(C + (-x,)))
    return frozenset(out)


def sfs_resolve(F, R, v: int) -> frozenset:
    """Strict full subsumption resolution: replace R+v, R+(-v) by R.

    The resolution variable must keep occurring elsewhere, so the variable
    set is unchanged and the deficiency drops by exactly one.
    """
    S = as_clause_set(F)
    R = clause(R)
    if abs(v) != v or v in {abs(y) for y in R}:
        raise PreconditionViolated("resolution variable must be positive and outside R")
    C, D = clause(R + (v,)), clause(R + (-v,))
    if C not in S or D not in S:
        raise PreconditionViolated("both parent clauses R+v and R+(-v) must be present")
    if R in S:
        raise PreconditionViolated("resolvent R is already present")
    if not any(v in {abs(y) for y in E} for E in S - {C, D}):
        raise PreconditionViolated("resolution variable would vanish (non-strict)")
    return frozenset((S - {C, D}) | {R})


def sfs_extend(F, R, v: int) -> frozenset:
    """Strict full subsumption extension: replace R by R+v, R+(-v), v occurring."""
    S = as_clause_set(F)
    R = clause(R)
    if R not in S:
        raise PreconditionViolated("clause to extend is not in the clause-set")
    if v not in variables(S) or v in {abs(y) for y in R}:
        raise PreconditionViolated("extension variable must occur in F but not in R")
    C, D = clause(R + (v,)), clause(R + (-v,))
    if C in S or D in S:
        raise PreconditionViolated("an extension clause is already present")
    return frozenset((S - {R}) | {C, D})


def nsfs_extend(F, C) -> frozenset:
    """Non-strict full subsumption extension on a fresh variable.

    The fresh variable is the smallest index above var(F); adds one clause
    and one variable, keeping the deficiency.
    """
    S = as_clause_set(F)
    C = clause(C)
    if C not in S:
        raise PreconditionViolated("clause to extend is not in the clause-set")
    v = fresh_variable(S)
    return frozenset((S - {C}) | {clause(C + (v,)), clause(C + (-v,))})


# ---------------------------------------------------------------------------
# generators


def gen_A(n: int) -> frozenset:
    """All 2^n full clauses over variables 1..n."""
    if n < 0:
        raise ParameterOutOfRange(f"gen_A needs n >= 0, got {n}")
    out = set()
    for signs in product((1, -1), repeat=n):
        out.add(clause(s * (i + 1) for i, s in enumerate(signs)))
    return frozenset(out)


def gen_Dt(n: int) -> frozenset:
    """The two long clauses plus the implication cycle over 1..n (n >= 2)."""
    if n < 2:
        raise ParameterOutOfRange(f"gen_Dt needs n >= 2, got {n}")
    cl = [clause(range(1, n + 1)), clause(-i for i in range(1, n + 1))]
    for i in range(1, n):
        cl.append(clause((-i, i + 1)))
    cl.append(clause((-n, 1)))
    return frozenset(cl)


def gen_M(n: int) -> frozenset:
    """Full clauses over 1..n with at most one negative literal."""
    if n < 1:
        raise ParameterOutOfRange(f"gen_M needs n >= 1, got {n}")
    out = {clause(range(1, n + 1))}
    for j in range(1, n + 1):
        out.add(clause((-j if i == j else i) for i in range(1, n + 1)))
    return frozenset(out)


def gen_F3() -> frozenset:
    """Deficiency-3 hitting witness with min-var-degree 5."""
    return frozenset(
        clause(c)
        for c in [(1, 2), (-1, 3), (1, -2, 3), (-1, 2, -3), (1, -2, -3), (-1, -2, -3)]
    )


def gen_F4() -> frozenset:
    """Deficiency-4 hitting witness with six full clauses."""
    return frozenset(
        clause(c)
        for c in [
            (1, 2),
            (-1, 2, 3),
            (1, -2, 3),
            (-1, -2, 3),
            (-1, 2, -3),
            (1, -2, -3),
            (-1, -2, -3),
        ]
    )


def gen_def6_witness() -> frozenset:
    """Deficiency-6 hitting witness over 4 variables: the eight full clauses
    with variable 2 positive plus {1,-2} and {-1,-2}; min-var-degree 8."""
    out = {clause((1, -2)), clause((-1, -2))}
    for s1, s3, s4 in product((1, -1), repeat=3):
        out.add(clause((s1 * 1, 2, s3 * 3, s4 * 4)))
    return frozenset(out)


def _first_nonfull_extension(S: frozenset):
    """First (clause, variable) pair eligible for strict full subsumption
    extension, scanning clauses canonically and variables ascending.

    In a hitting clause-set neither extension clause can be present already,
    and any variable outside the clause still occurs elsewhere.
    """
    vs = variables(S)
    for R in sorted_clauses(S):
        missing = sorted(vs - {abs(y) for y in R})
        if missing:
            return R, missing[0]
    return None


def gen_uclash(k: int, n: int) -> frozenset:
    """Unsatisfiable hitting clause-set with deficiency k over exactly n variables.

    Recipe: seed with the full clause-set one variable below the threshold
    nA(k), one non-strict extension to bring in a fresh variable, strict
    extensions (the first on that fresh variable) until the deficiency is k,
    then non-strict padding up to n variables.  k = 1 starts from the empty
    clause instead.
    """
    if k < 1:
        raise ParameterOutOfRange(f"gen_uclash needs k >= 1, got {k}")
    if n < nA(k):
        raise ParameterOutOfRange(
            f"deficiency {k} needs at least nA({k}) = {nA(k)} variables, got {n}"
        )
    if k == 1:
        S = frozenset({clause(())})
    else:
        m0 = nA(k) - 1
        S = gen_A(m0)
        S = nsfs_extend(S, sorted_clauses(S)[0])
        for _ in range(k - (2**m0 - m0)):
            R, v = _first_nonfull_extension(S)
            S = sfs_extend(S, R, v)
    while len(variables(S)) < n:
        S = nsfs_extend(S, sorted_clauses(S)[0])
    return S


def gen_vmu_sharp(k: int) -> frozenset:
    """Unsatisfiable surplus-equals-deficiency family attaining the degree bound.

    Start at the full clause-set of the largest deficiency 2^m - m <= k, then
    repeat: full singular unit-extension followed by re-adding the chosen
    full clause.  Each round raises deficiency, surplus and min-var-degree by
    one, so the result has delta = surplus = k and min-var-degree nm(k).
    """
    if k < 1:
        raise ParameterOutOfRange(f"gen_vmu_sharp needs k >= 1, got {k}")
    m = 1
    while 2 ** (m + 1) - (m + 1) <= k:
        m += 1
    S = gen_A(m)
    for _ in range(k - (2**m - m)):
        full = [C for C in sorted_clauses(S) if len(C) == len(variables(S))]
        C = full[0]
        S = full_singular_unit_extension(S, fresh_variable(S))
        S = frozenset(S | {C})
    return S


def gen_mlean_highdeg(k: int, K: int) -> frozenset:
    """Matching-lean clause-set of deficiency k with all positive literal
    degrees at least K (unsatisfiable for k >= 2).

    For k >= 2 a deficiency-(k-1) hitting core over n >= K variables is glued
    to the pairing of the one-negation families over the core variables and a
    disjoint copy; for k = 1 the one-negation family alone does it.
    """
    if k < 1 or K < 1:
        raise ParameterOutOfRange(f"gen_mlean_highdeg needs k, K >= 1, got {k}, {K}")
    if k == 1:
        return gen_M(K)
    G = gen_uclash(k - 1, max(K, nA(k - 1), 1))
    n = len(variables(G))
    left = sorted_clauses(gen_M(n))
    right = sorted_clauses(
        frozenset(clause(tuple((abs(x) + n) * (1 if x > 0 else -1) for x in C)) for C in gen_M(n))
    )
    glued = {clause(a + b) for a, b in zip(left, right)}
    return frozenset(G | glued)


GENERATORS = {
    "A": gen_A,
    "Dt": gen_Dt,
    "M": gen_M,
    "F3": gen_F3,
    "F4": gen_F4,
    "def6": gen_def6_witness,
    "uclash": gen_uclash,
    "vmu-sharp": gen_vmu_sharp,
    "mlean-highdeg": gen_mlean_highdeg,
}


def gen_fsue_chain(n: int) -> frozenset:
    """n-fold full singular unit-extension chain starting from {bot}.

    Lands in the saturated deficiency-1 hitting family; chains of equal
    length are isomorphic.
    """
    if n < 0:
        raise ParameterOutOfRange(f"gen_fsue_chain needs n >= 0, got {n}")
    S = frozenset({clause(())})
    for v in range(1, n + 1):
        S = full_singular_unit_extension(S, v)
    return S


GENERATORS["fsue-chain"] = gen_fsue_chain
