"""Clause-variable matching machinery.

Maximal deficiency, surplus with witnesses, matching autarkies and the
matching-lean kernel, all built on bipartite maximum matching between
variables and clause occurrences (multiplicities expand into separate
occurrence nodes, so every result is multiplicity-aware).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import (
    MultiClauseSet,
    PartialAssignment,
    as_multi,
    restrict,
    variables,
)
from .errors import EmptyVariableSet


class _Incidence:
    """Bipartite incidence of a multi-clause-set.

    Left side: variables in ascending order.  Right side: clause occurrences
    in canonical clause order, one node per multiplicity unit.  Occurrences of
    the empty clause take part in the counts but have no edges.
    """

    def __init__(self, F: MultiClauseSet):
        self.varlist = sorted(variables(F))
        self.vindex = {v: i for i, v in enumerate(self.varlist)}
        self.occs = list(F.occurrences())
        self.nl = len(self.varlist)
        self.nr = len(self.occs)
        per_var: list[list[int]] = [[] for _ in range(self.nl)]
        self.occ_vars: list[list[int]] = []
        for b, C in enumerate(self.occs):
            row = [self.vindex[abs(x)] for x in C]
            self.occ_vars.append(row)
            for a in row:
                per_var[a].append(b)
        self.vptr = np.zeros(self.nl + 1, np.int64)
        for i, r in enumerate(per_var):
            self.vptr[i + 1] = self.vptr[i] + len(r)
        self.vidx = np.empty(int(self.vptr[-1]), np.int64)
        pos = 0
        for r in per_var:
            for b in r:
                self.vidx[pos] = b
                pos += 1

    def gamma(self, vi: int) -> np.ndarray:
        return self.vidx[self.vptr[vi] : self.vptr[vi + 1]]


def _alternating_unreachable(inc: _Incidence, pair_l, pair_r, skip_left=-1, banned=None):
    """Left vertices not alternating-reachable from any unmatched occurrence.

    This is the unique largest variable set V maximising |V| - |Gamma(V)| in
    the (masked) incidence graph; the matched partners of Gamma(V) lie inside
    V and certify a matching autarky.
    """
    visited_var = [False] * inc.nl
    visited_occ = [False] * inc.nr
    stack = []
    for b in range(inc.nr):
        if (banned is None or not banned[b]) and pair_r[b] < 0 and inc.occ_vars[b]:
            visited_occ[b] = True
            stack.append(b)
    while stack:
        b = stack.pop()
        for a in inc.occ_vars[b]:
            if a == skip_left or visited_var[a]:
                continue
            visited_var[a] = True
            b2 = pair_l[a]
            if b2 >= 0 and not visited_occ[b2]:
                visited_occ[b2] = True
                stack.append(b2)
    return [
        a
        for a in range(inc.nl)
        if a != skip_left and not visited_var[a]
    ]


def delta_star(F) -> int:
    """Maximal deficiency: max of delta over all sub-multi-clause-sets."""
    M = as_multi(F)
    inc = _Incidence(M)
    size, _, _ = kernels.max_matching(inc.nl, inc.nr, inc.vptr, inc.vidx)
    return inc.nr - size


def is_matching_satisfiable(F) -> bool:
    return delta_star(F) == 0


@dataclass(frozen=True)
class SurplusResult:
    value: int
    witness: frozenset | None  # nonempty V with delta(F[V]) = value; None iff n(F) = 0


def surplus(F) -> SurplusResult:
    """Minimum of delta(F[V]) over nonempty variable sets V (0 when n(F)=0).

    Polynomial: for each variable v, the minimum over V containing v equals
    vdeg(v) + max-matching(incidence minus v and its occurrences) - n(F); the
    witness is read off the matching structure of the best v.
    """
    M = as_multi(F)
    inc = _Incidence(M)
    if inc.nl == 0:
        return SurplusResult(0, None)
    vals = kernels.surplus_values(inc.nl, inc.nr, inc.vptr, inc.vidx)
    vi = int(np.argmin(vals))
    value = int(vals[vi])
    banned = np.zeros(inc.nr, np.uint8)
    banned[inc.gamma(vi)] = 1
    _, pair_l, pair_r = kernels.masked_matching(
        inc.nl, inc.nr, inc.vptr, inc.vidx, vi, banned
    )
    keep = _alternating_unreachable(inc, pair_l, pair_r, skip_left=vi, banned=banned)
    witness = frozenset({inc.varlist[vi]} | {inc.varlist[a] for a in keep})
    return SurplusResult(value, witness)


def minimal_surplus_witness(F) -> frozenset:
    """Inclusion-minimal nonempty V with delta(F[V]) equal to the surplus.

    Greedy shrink: drop a variable as long as the surplus of the restriction
    stays put; variables are probed in ascending order.
    """
    M = as_multi(F)
    if not variables(M):
        raise EmptyVariableSet("surplus witness needs at least one variable")
    target = surplus(M).value
    V = set(variables(M))
    changed = True
    while changed:
        changed = False
        for v in sorted(V):
            if len(V) == 1:
                break
            W = V - {v}
            if surplus(restrict(M, W)).value == target:
                V = W
                changed = True
    return frozenset(V)


def find_matching_autarky(F) -> PartialAssignment | None:
    """Some nontrivial matching autarky, or None iff the input is matching-lean.

    The assignment satisfies every clause it touches via the matched variable
    of that clause occurrence, which is the injective certificate.
    """
    M = as_multi(F)
    inc = _Incidence(M)
    if inc.nl == 0:
        return None
    _, pair_l, pair_r = kernels.max_matching(inc.nl, inc.nr, inc.vptr, inc.vidx)
    expander = _alternating_unreachable(inc, pair_l, pair_r)
    if not expander:
        return None
    # every occurrence meeting the expander set is matched into it, so the
    # oriented matched variables already satisfy all touched clauses
    lits = []
    for a in expander:
        b = pair_l[a]
        if b < 0:
            continue
        v = inc.varlist[a]
        C = inc.occs[b]
        lits.append(v if v in C else -v)
    assert lits, "nonempty expander must contain matched variables"
    return PartialAssignment.from_literals(lits)


@dataclass(frozen=True)
class KernelTrace:
    steps: tuple  # of (PartialAssignment, removed occurrence count)
    kernel: MultiClauseSet


def matching_lean_kernel(F) -> KernelTrace:
    """Apply matching autarkies as long as possible (confluent).

    The kernel is the unique largest matching-lean sub-multi-clause-set;
    occurrences of the empty clause always survive.
    """
    current = as_multi(F)
    steps = []
    while True:
        phi = find_matching_autarky(current)
        if phi is None:
            return KernelTrace(tuple(steps), current)
        reduced = MultiClauseSet(
            {C: current[C] for C in current if not phi.satisfies(C)}
        )
        steps.append((phi, current.total() - reduced.total()))
        current = reduced


def is_matching_lean(F) -> bool:
    """True iff there is no nontrivial matching autarky.

    For n(F) > 0 this is equivalent to surplus >= 1; the empty clause-set and
    pure multisets of the empty clause are matching-lean.
    """
    return find_matching_autarky(F) is None
