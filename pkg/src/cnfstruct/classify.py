"""Decision predicates over clause-sets.

Satisfiability is decided by a small DPLL solver (unit propagation, pure
literal elimination, deterministic branching).  The structural classes MU,
SMU, marginal MU, VMU reduce to few-or-many SAT calls; hitting and its
unsatisfiability test, SED, MLCR and matching-leanness are polynomial.
Leanness is coNP-complete and exact only up to a variable limit, reported
tri-state (True / False / None for skipped).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .bounds import nm
from .core import (
    PartialAssignment,
    as_clause_set,
    as_multi,
    clause,
    clause_key,
    measures,
    restrict,
    sorted_clauses,
    variables,
)
from .errors import NotHitting, NotUnsatHitting
from .matching import is_matching_lean, minimal_surplus_witness, surplus

DEFAULT_N_LIMIT = 14


def _unit_propagate(clauses: list, assign: dict) -> bool:
    """Simplify in place; False on derived empty clause."""
    while True:
        if not clauses:
            return True
        progress = False
        for C in clauses:
            if not C:
                return False
            if len(C) == 1:
                (x,) = C
                assign[abs(x)] = 1 if x > 0 else 0
                _reduce_by(clauses, x)
                progress = True
                break
        if progress:
            continue
        # pure literal: lowest variable first, negative sign first
        lits = set()
        for C in clauses:
            lits.update(C)
        for x in sorted(lits, key=lambda y: (abs(y), y > 0)):
            if -x not in lits:
                assign[abs(x)] = 1 if x > 0 else 0
                _reduce_by(clauses, x)
                progress = True
                break
        if not progress:
            return True


def _reduce_by(clauses: list, x: int) -> None:
    kept = []
    for C in clauses:
        if x in C:
            continue
        kept.append(C - {-x} if -x in C else C)
    clauses[:] = kept


def _dpll(clauses: list, assign: dict) -> bool:
    if not _unit_propagate(clauses, assign):
        return False
    if not clauses:
        return True
    # branch: smallest clause (canonical tie-break), its lowest variable, value 1 first
    C = min(clauses, key=lambda c: (len(c), clause_key(clause(c))))
    v = min(abs(x) for x in C)
    for val in (1, 0):
        sub = [set(D) for D in clauses]
        trail = dict(assign)
        trail[v] = val
        _reduce_by(sub, v if val == 1 else -v)
        if _dpll(sub, trail):
            assign.clear()
            assign.update(trail)
            return True
    return False


def satisfying_assignment(F) -> PartialAssignment | None:
    """A satisfying partial assignment, or None if unsatisfiable."""
    assign: dict = {}
    clauses = [set(C) for C in as_clause_set(F)]
    if _dpll(clauses, assign):
        return PartialAssignment(assign)
    return None


def is_satisfiable(F) -> bool:
    return satisfying_assignment(F) is not None


def implies(F, C) -> bool:
    """Semantic implication F |= C (refutation of F plus the negated clause)."""
    C = clause(C)
    extended = list(as_clause_set(F)) + [clause([-x]) for x in C]
    return not is_satisfiable(extended)


def is_hitting(F) -> bool:
    """Every two distinct clauses clash in at least one variable."""
    S = sorted_clauses(F)
    for C, D in combinations(S, 2):
        if not any(-x in D for x in C):
            return False
    return True


def hitting_unsat_check(F) -> bool:
    """Exact unsatisfiability test for hitting clause-sets: sum 2^-|C| = 1."""
    if not is_hitting(F):
        raise NotHitting("dyadic-sum criterion only applies to hitting clause-sets")
    total = sum(Fraction(1, 2 ** len(C)) for C in as_clause_set(F))
    return total == 1


def is_mu(F) -> bool:
    """Minimally unsatisfiable: unsat, every single-clause removal satisfiable."""
    S = as_clause_set(F)
    if is_satisfiable(S):
        return False
    return all(is_satisfiable(S - {C}) for C in S)


def is_saturated_mu(F) -> bool:
    """MU and every literal addition to any clause yields a satisfiable set.

    Additions over new variables are vacuous for MU inputs and skipped.
    """
    S = as_clause_set(F)
    if not is_mu(S):
        return False
    vs = variables(S)
    for C in S:
        for v in sorted(vs - {abs(x) for x in C}):
            for x in (v, -v):
                if not is_satisfiable((S - {C}) | {clause(C + (x,))}):
                    return False
    return True


def is_marginal_mu(F) -> bool:
    """MU and no single literal-occurrence removal stays MU."""
    S = as_clause_set(F)
    if not is_mu(S):
        return False
    for C in S:
        for x in C:
            shrunk = (S - {C}) | {clause(y for y in C if y != x)}
            if is_mu(shrunk):
                return False
    return True


def removable_literals_hitting(F) -> list:
    """Literal occurrences of an unsatisfiable hitting clause-set whose removal stays MU.

    Pure subsumption test, no SAT calls: removing x from C keeps minimal
    unsatisfiability iff no other clause strictly contains C minus x.
    """
    S = as_clause_set(F)
    if not (is_hitting(S) and hitting_unsat_check(S)):
        raise NotUnsatHitting("input must be an unsatisfiable hitting clause-set")
    out = []
    for C in sorted_clauses(S):
        for x in C:
            rest = set(C) - {x}
            if not any(rest < set(D) for D in S if D != C):
                out.append((C, x))
    return out


def is_lean(F, n_limit: int = DEFAULT_N_LIMIT):
    """Tri-state leanness: no nontrivial autarky.

    Exact for n(F) <= n_limit by searching a nonempty variable set V whose
    restriction F[V] is satisfiable (such V exists iff a nontrivial autarky
    does); None above the limit.
    """
    M = as_multi(F)
    vs = sorted(variables(M))
    if not vs:
        return True
    if len(vs) > n_limit:
        return None
    for size in range(1, len(vs) + 1):
        for V in combinations(vs, size):
            if is_satisfiable(restrict(M, V)):
                return False
    return True


def is_vmu(F) -> bool:
    """Variable-minimally unsatisfiable.

    Unsat, and for every variable the clauses avoiding it are satisfiable.
    """
    S = as_clause_set(F)
    if is_satisfiable(S):
        return False
    for v in sorted(variables(S)):
        if not is_satisfiable({C for C in S if v not in C and -v not in C}):
            return False
    return True


def is_sed(F) -> bool:
    """Surplus equals deficiency."""
    M = as_multi(F)
    return surplus(M).value == measures(M).delta


def is_mlcr(F) -> bool:
    """Matching-lean, no empty clause, nonempty, surplus realised only by the
    full variable set, and min-var-degree above the non-Mersenne bound.

    The only-full-set condition is checked through the greedy minimal surplus
    witness; equality with the all-subsets definition is exercised in tests.
    """
    M = as_multi(F)
    if M.total() == 0 or M.multiplicity(()) > 0:
        return False
    if not is_matching_lean(M):
        return False
    if minimal_surplus_witness(M) != variables(M):
        return False
    m = measures(M)
    return m.minvdeg > nm(surplus(M).value)


@dataclass(frozen=True)
class ClassReport:
    """Tri-state membership flags; None means skipped above the size limit."""

    sat: bool | None
    hitting: bool | None
    unsat_hitting: bool | None
    mu: bool | None
    smu: bool | None
    marginal_mu: bool | None
    lean: bool | None
    matching_lean: bool | None
    vmu: bool | None
    sed: bool | None
    mlcr: bool | None
    size_limits_used: dict = field(default_factory=dict)


def classify_report(F, n_limit: int = DEFAULT_N_LIMIT) -> ClassReport:
    """Evaluate all class flags, skipping SAT-backed ones above ``n_limit``."""
    M = as_multi(F)
    S = M.clause_set()
    n = len(variables(M))
    hit = is_hitting(S)
    uhit = hitting_unsat_check(S) if hit else False
    within = n <= n_limit
    return ClassReport(
        sat=is_satisfiable(S) if within else None,
        hitting=hit,
        unsat_hitting=uhit,
        mu=is_mu(S) if within else None,
        smu=is_saturated_mu(S) if within else None,
        marginal_mu=is_marginal_mu(S) if within else None,
        lean=is_lean(M, n_limit),
        matching_lean=is_matching_lean(M),
        vmu=is_vmu(S) if within else None,
        sed=is_sed(M),
        mlcr=is_mlcr(M),
        size_limits_used={"n": n_limit},
    )
