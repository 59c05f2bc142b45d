"""Autarky-reduction pipeline.

Alternates matching-lean kernel computation with removal of the clauses
meeting a minimal surplus witness whenever the min-var-degree exceeds the
non-Mersenne bound at the current surplus.  Every removal is backed by an
existing autarky (satisfying assignment of the restriction); finding that
assignment efficiently is an open problem, so witness extraction is optional
and size-limited, while the clause removal itself needs only the witness's
variable set.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bounds import nm
from .classify import satisfying_assignment
from .core import (
    MultiClauseSet,
    PartialAssignment,
    as_multi,
    measures,
    restrict,
    variables,
)
from .matching import matching_lean_kernel, minimal_surplus_witness, surplus


@dataclass(frozen=True)
class KernelStep:
    autarky: PartialAssignment
    removed: int


@dataclass(frozen=True)
class SurplusStep:
    variables: frozenset
    removed: int
    witness: PartialAssignment | None


@dataclass(frozen=True)
class ReductionTrace:
    steps: tuple  # KernelStep / SurplusStep entries in application order
    result: MultiClauseSet
    duplicates_removed: int  # multiplicity collapse at entry (step zero)
    empty_clause_shortcut: bool


def verify_autarky(F, phi: PartialAssignment) -> bool:
    """True iff phi satisfies every clause of F it touches."""
    M = as_multi(F)
    return all(phi.satisfies(C) for C in M if phi.touches(C))


def autarky_reduce(F, want_witnesses: bool = False, witness_n_limit: int = 14) -> ReductionTrace:
    """Satisfiability-equivalent reduction establishing the degree bound.

    The result is the empty clause-set, the singleton of the empty clause, or
    a sub-clause-set with surplus >= 1 whose min-var-degree is at most the
    non-Mersenne value of its surplus.  With ``want_witnesses`` and small
    variable counts, each surplus step carries a satisfying assignment of the
    restriction to the witness set, i.e. the underlying autarky.
    """
    M = as_multi(F)
    collapsed = MultiClauseSet({C: 1 for C in M})
    duplicates = M.total() - collapsed.total()
    if collapsed.multiplicity(()) > 0:
        return ReductionTrace((), MultiClauseSet({(): 1}), duplicates, True)
    steps: list = []
    current = collapsed
    while True:
        kt = matching_lean_kernel(current)
        for phi, removed in kt.steps:
            steps.append(KernelStep(phi, removed))
        current = kt.kernel
        if not variables(current):
            break
        sig = surplus(current).value
        assert sig >= 1, "matching-lean kernel must have positive surplus"
        if measures(current).minvdeg <= nm(sig):
            break
        V = minimal_surplus_witness(current)
        witness = None
        if want_witnesses and len(variables(current)) <= witness_n_limit:
            phi = satisfying_assignment(restrict(current, V))
            assert phi is not None, "restriction to a surplus witness must be satisfiable"
            bindings = dict(phi)
            for v in V:
                bindings.setdefault(v, 0)
            witness = PartialAssignment(bindings)
            assert verify_autarky(current, witness)
        survivors = {C: 1 for C in current if not any(abs(x) in V for x in C)}
        removed = current.total() - sum(survivors.values())
        steps.append(SurplusStep(V, removed, witness))
        current = MultiClauseSet(survivors)
    return ReductionTrace(tuple(steps), current, duplicates, False)
