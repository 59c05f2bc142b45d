"""Clause-set data model.

Literals are nonzero integers, the variable being the absolute value and
complementation the sign flip.  A clause is a clash-free tuple of literals in
canonical order; clause-sets are frozensets of clauses, multi-clause-sets map
clauses to positive multiplicities.  All values are immutable and hashable, so
they can be shared freely.

Canonical literal order inside a clause is (variable, sign) with the negative
sign first, e.g. ``(-1, 2, -3)``.  Clause-sets are ordered lexicographically
over these keys; :func:`sorted_clauses` realises that order.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Mapping
from dataclasses import dataclass

from .errors import NotResolvable, TautologicalClause

Literal = int
Clause = tuple  # tuple[Literal, ...] in canonical order


def literal_key(x: int) -> tuple[int, bool]:
    return (abs(x), x > 0)


def clause(literals: Iterable[int]) -> Clause:
    """Build a canonical clause; duplicate literals collapse, clashes raise."""
    seen = set()
    for x in literals:
        if not isinstance(x, int) or isinstance(x, bool) or x == 0:
            raise ValueError(f"literal must be a nonzero integer, got {x!r}")
        if -x in seen:
            raise TautologicalClause(f"variable {abs(x)} occurs in both signs")
        seen.add(x)
    return tuple(sorted(seen, key=literal_key))


def clause_key(C: Clause):
    return tuple(literal_key(x) for x in C)


def clause_set(clauses: Iterable) -> frozenset:
    """Canonicalise an iterable of clause-likes into a clause-set."""
    return frozenset(clause(c) for c in clauses)


def sorted_clauses(F) -> tuple:
    """Clauses of ``F`` (any clause-set-like) in canonical order."""
    return tuple(sorted(as_clause_set(F), key=clause_key))


class MultiClauseSet(Mapping):
    """Immutable multiset of clauses (clause -> multiplicity >= 1).

    Iteration yields the distinct clauses in canonical order; ``len`` counts
    distinct clauses, :meth:`total` counts clause occurrences c(F).
    """

    __slots__ = ("_entries", "_order", "_hash")

    def __init__(self, entries=()):
        m: dict = {}
        items = entries.items() if isinstance(entries, Mapping) else entries
        for c, k in items:
            c = clause(c)
            k = int(k)
            if k < 1:
                raise ValueError(f"multiplicity must be >= 1, got {k}")
            m[c] = m.get(c, 0) + k
        self._entries = m
        self._order = tuple(sorted(m, key=clause_key))
        self._hash = None

    @classmethod
    def from_clauses(cls, clauses: Iterable) -> "MultiClauseSet":
        """Build from clause occurrences; repeated clauses accumulate."""
        return cls((c, 1) for c in clauses)

    def __getitem__(self, C) -> int:
        return self._entries[clause(C)]

    def multiplicity(self, C) -> int:
        return self._entries.get(clause(C), 0)

    def __iter__(self):
        return iter(self._order)

    def __len__(self) -> int:
        return len(self._entries)

    @property
    def clauses(self) -> tuple:
        return self._order

    def clause_set(self) -> frozenset:
        return frozenset(self._entries)

    def total(self) -> int:
        return sum(self._entries.values())

    def occurrences(self):
        """Distinct clauses repeated by multiplicity, in canonical order."""
        for c in self._order:
            for _ in range(self._entries[c]):
                yield c

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiClauseSet):
            return self._entries == other._entries
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._entries.items()))
        return self._hash

    def __repr__(self) -> str:
        inner = ", ".join(
            f"{self._entries[c]}*{list(c)}" if self._entries[c] > 1 else f"{list(c)}"
            for c in self._order
        )
        return f"MultiClauseSet({{{inner}}})"


def as_multi(F) -> MultiClauseSet:
    """Coerce a clause-set-like into a :class:`MultiClauseSet`.

    Mappings keep multiplicities; plain iterables of clauses accumulate
    repeats (a frozenset therefore gives multiplicity 1 throughout).
    """
    if isinstance(F, MultiClauseSet):
        return F
    if isinstance(F, Mapping):
        return MultiClauseSet(F)
    return MultiClauseSet.from_clauses(F)


def as_clause_set(F) -> frozenset:
    """Underlying clause-set of any clause-set-like value."""
    if isinstance(F, MultiClauseSet):
        return F.clause_set()
    if isinstance(F, frozenset) and all(isinstance(c, tuple) for c in F):
        return F
    if isinstance(F, Mapping):
        return frozenset(clause(c) for c in F)
    return clause_set(F)


def variables(F) -> frozenset:
    return frozenset(abs(x) for C in as_clause_set(F) for x in C)


def fresh_variable(F) -> int:
    """Smallest positive integer above every variable of ``F``."""
    vs = variables(F)
    return max(vs) + 1 if vs else 1


@dataclass(frozen=True)
class Measures:
    n: int
    c: int
    delta: int
    ell: int
    minvdeg: float  # +inf when n == 0
    nfc: int
    varmvd: frozenset


def measures(F) -> Measures:
    """All basic measures of a (multi-)clause-set.

    ``minvdeg`` is the +infinity sentinel exactly when there are no
    variables; ``nfc`` counts distinct full clauses; ``varmvd`` is the set of
    variables of minimal degree.
    """
    M = as_multi(F)
    vs = variables(M)
    n = len(vs)
    c = M.total()
    ell = sum(len(C) * M[C] for C in M)
    vdeg: dict[int, int] = {v: 0 for v in vs}
    for C in M:
        k = M[C]
        for x in C:
            vdeg[abs(x)] += k
    nfc = sum(1 for C in M if len(C) == n and frozenset(abs(x) for x in C) == vs)
    if n == 0:
        return Measures(0, c, c, ell, math.inf, nfc, frozenset())
    mvd = min(vdeg.values())
    varmvd = frozenset(v for v, d in vdeg.items() if d == mvd)
    return Measures(n, c, c - n, ell, mvd, nfc, varmvd)


def degrees(F, v: int) -> tuple[int, int, int]:
    """Literal degrees (positive, negative) and variable degree of ``v``."""
    M = as_multi(F)
    pos = neg = 0
    for C in M:
        k = M[C]
        if v in C:
            pos += k
        elif -v in C:
            neg += k
    return pos, neg, pos + neg


class PartialAssignment(Mapping):
    """Finite map from variables to truth values in {0, 1}."""

    __slots__ = ("_b",)

    def __init__(self, bindings: Mapping[int, int] = ()):
        b = {}
        items = bindings.items() if isinstance(bindings, Mapping) else bindings
        for v, e in items:
            if not isinstance(v, int) or v <= 0:
                raise ValueError(f"variable must be a positive integer, got {v!r}")
            if e not in (0, 1):
                raise ValueError(f"truth value must be 0 or 1, got {e!r}")
            b[v] = e
        self._b = b

    @classmethod
    def from_literals(cls, literals: Iterable[int]) -> "PartialAssignment":
        """Assignment setting every given literal to 1."""
        return cls({abs(x): (1 if x > 0 else 0) for x in literals})

    def __getitem__(self, v):
        return self._b[v]

    def __iter__(self):
        return iter(sorted(self._b))

    def __len__(self):
        return len(self._b)

    def literal_value(self, x: int):
        """Value of a literal under the assignment, or None if unassigned."""
        e = self._b.get(abs(x))
        if e is None:
            return None
        return e if x > 0 else 1 - e

    def satisfies(self, C) -> bool:
        return any(self.literal_value(x) == 1 for x in C)

    def touches(self, C) -> bool:
        return any(abs(x) in self._b for x in C)

    def __repr__(self) -> str:
        inner = ", ".join(f"{v}->{self._b[v]}" for v in sorted(self._b))
        return f"PartialAssignment({{{inner}}})"


def apply_assignment(phi: PartialAssignment, F) -> MultiClauseSet:
    """phi * F: drop satisfied clauses, strip falsified literals.

    Clauses whose images coincide have their multiplicities summed.
    """
    M = as_multi(F)
    out: dict = {}
    for C in M:
        if phi.satisfies(C):
            continue
        image = clause(x for x in C if phi.literal_value(x) is None)
        out[image] = out.get(image, 0) + M[C]
    return MultiClauseSet(out)


def restrict(F, V: Iterable[int]) -> MultiClauseSet:
    """F[V]: drop clauses disjoint from V, intersect the rest with V's literals."""
    Vs = frozenset(V)
    M = as_multi(F)
    out: dict = {}
    for C in M:
        image = clause(x for x in C if abs(x) in Vs)
        if not image:
            continue
        out[image] = out.get(image, 0) + M[C]
    return MultiClauseSet(out)


def resolvent(C, D) -> Clause:
    """Resolvent of two clauses clashing in exactly one variable."""
    C = clause(C)
    D = clause(D)
    clashes = [x for x in C if -x in D]
    if len(clashes) != 1:
        raise NotResolvable(f"clauses clash in {len(clashes)} variables, need exactly 1")
    x = clashes[0]
    return clause(y for y in C + D if y != x and y != -x)


def dp_reduce(F, v: int) -> frozenset:
    """DP-reduction (variable elimination) of ``v`` on a clause-set.

    Clauses containing ``v`` are removed and replaced by all their resolvents
    on ``v``; pairs clashing in a further variable yield no resolvent.
    """
    S = as_clause_set(F)
    pos = [C for C in S if v in C]
    neg = [C for C in S if -v in C]
    rest = {C for C in S if v not in C and -v not in C}
    for C in pos:
        for D in neg:
            if sum(1 for x in C if -x in D) == 1:
                rest.add(resolvent(C, D))
    return frozenset(rest)
