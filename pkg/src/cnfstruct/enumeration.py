"""Exhaustive desk-scale enumeration of unsatisfiable hitting clause-sets.

The primary enumerator explores the closure of the full clause-set over
{1..n} under strict full subsumption resolution, which reaches exactly the
unsatisfiable hitting clause-sets with that variable set; states are
deduplicated up to isomorphism by a canonical form minimising over all
n! * 2^n renamings and sign flips.  A second, independent subset-backtracking
enumerator over all clauses with dyadic-sum pruning serves as a correctness
oracle for n <= 3.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from pathlib import Path

import numpy as np

from . import kernels
from .core import as_clause_set, clause, measures, sorted_clauses, variables
from .errors import ParameterOutOfRange, TooManyVariables
from .matching import surplus

MAX_ISO_VARS = 6
DEFAULT_N_CAP = 4


def _transforms(n: int):
    perms = np.array(list(permutations(range(n))) or [()], np.int64).reshape(-1, n)
    T = perms.shape[0]
    flips = np.zeros((T * (1 << n), n), np.uint8)
    allperms = np.zeros((T * (1 << n), n), np.int64)
    row = 0
    for p in range(T):
        for mask in range(1 << n):
            allperms[row] = perms[p]
            for col in range(n):
                flips[row, col] = (mask >> col) & 1
            row += 1
    pow3 = np.array([3 ** (n - 1 - j) for j in range(n)], np.int64)
    return allperms, flips, pow3


_TRANSFORM_CACHE: dict = {}


def _get_transforms(n: int):
    if n not in _TRANSFORM_CACHE:
        _TRANSFORM_CACHE[n] = _transforms(n)
    return _TRANSFORM_CACHE[n]


def _digitise(S, varlist) -> np.ndarray:
    pos = {v: i for i, v in enumerate(varlist)}
    rows = sorted_clauses(S)
    digits = np.full((len(rows), len(varlist)), 2, np.uint8)
    for ci, C in enumerate(rows):
        for x in C:
            digits[ci, pos[abs(x)]] = 1 if x > 0 else 0
    return digits


def _decode(enc: np.ndarray, n: int) -> frozenset:
    out = []
    for e in enc:
        e = int(e)
        lits = []
        for j in range(n):
            d = (e // 3 ** (n - 1 - j)) % 3
            if d == 0:
                lits.append(-(j + 1))
            elif d == 1:
                lits.append(j + 1)
        out.append(clause(lits))
    return frozenset(out)


def canonical_form(F) -> frozenset:
    """Lexicographic minimum over all variable renamings and sign flips.

    Two clause-sets are isomorphic iff their canonical forms are equal; the
    result lives on variables 1..n.
    """
    S = as_clause_set(F)
    vs = sorted(variables(S))
    n = len(vs)
    if n > MAX_ISO_VARS:
        raise TooManyVariables(f"canonical form is capped at {MAX_ISO_VARS} variables, got {n}")
    if n == 0:
        return S
    digits = _digitise(S, vs)
    perms, flips, pow3 = _get_transforms(n)
    enc = kernels.canonical_min_encoding(digits, perms, flips, pow3)
    return _decode(enc, n)


@dataclass(frozen=True)
class CatalogEntry:
    clauses: frozenset  # canonical form over variables 1..n
    n: int
    delta: int
    minvdeg: int
    nfc: int
    sigma: int
    nonsingular: bool


@dataclass(frozen=True)
class Catalog:
    var_count: int
    entries: tuple
    generation_method: str
    partial: bool = False


def _is_nonsingular(S) -> bool:
    deg: dict[int, list] = {}
    for C in S:
        for x in C:
            deg.setdefault(abs(x), [0, 0])[0 if x > 0 else 1] += 1
    return all(p >= 2 and q >= 2 for p, q in deg.values())


def _make_entry(S) -> CatalogEntry:
    m = measures(S)
    return CatalogEntry(
        clauses=S,
        n=m.n,
        delta=m.delta,
        minvdeg=int(m.minvdeg),
        nfc=m.nfc,
        sigma=surplus(S).value,
        nonsingular=_is_nonsingular(S),
    )


def _successors(S: frozenset):
    """One-step strict full subsumption resolutions of a hitting clause-set."""
    deg: dict[int, int] = {}
    for C in S:
        for x in C:
            deg[abs(x)] = deg.get(abs(x), 0) + 1
    for C in S:
        for x in C:
            if x < 0:
                continue  # each unordered pair is visited from its positive side
            if deg[x] < 3:
                continue  # variable would vanish: non-strict
            D = clause(tuple(y for y in C if y != x) + (-x,))
            if D in S:
                R = clause(y for y in C if y != x)
                yield frozenset((S - {C, D}) | {R})


def enum_uclash(n: int, cap: int | None = None, allow_large: bool = False) -> Catalog:
    """All unsatisfiable hitting clause-sets over exactly {1..n}, up to isomorphism.

    Breadth-first closure from the full clause-set under strict full
    subsumption resolution (complete for this class), deduplicated first on
    labelled states, then canonically.  ``cap`` bounds the number of labelled
    states; exceeding it yields a partial catalog flagged as such.  n > 4 is
    refused unless ``allow_large`` is set (the n = 5 space is not certified
    to terminate at desk scale).
    """
    if n < 1:
        raise ParameterOutOfRange(f"enumeration needs n >= 1, got {n}")
    if n > DEFAULT_N_CAP and not allow_large:
        raise ParameterOutOfRange(
            f"enumeration is capped at n = {DEFAULT_N_CAP}; pass allow_large to override"
        )
    if n > MAX_ISO_VARS:
        raise ParameterOutOfRange(f"canonicalisation is capped at n = {MAX_ISO_VARS}")
    from .transform import gen_A

    start = gen_A(n)
    seen = {start}
    frontier = [start]
    partial = False
    while frontier:
        state = frontier.pop()
        for nxt in _successors(state):
            if nxt in seen:
                continue
            if cap is not None and len(seen) >= cap:
                partial = True
                continue
            seen.add(nxt)
            frontier.append(nxt)
    canon = {canonical_form(S) for S in seen}
    entries = sorted(
        (_make_entry(S) for S in canon),
        key=lambda e: (e.delta, sorted_clauses(e.clauses)),
    )
    return Catalog(n, tuple(entries), "sfs-closure", partial)


def enum_uclash_subsets(n: int) -> frozenset:
    """Independent oracle enumerator for n <= 3: backtracking over hitting
    subsets of all nonempty clauses with exact dyadic-sum pruning.

    Returns the set of canonical forms.
    """
    if not 1 <= n <= 3:
        raise ParameterOutOfRange(f"subset enumerator is desk-scale for n in 1..3, got {n}")
    all_clauses = []
    for digits in range(3**n):
        lits = []
        d = digits
        for v in range(1, n + 1):
            r = d % 3
            d //= 3
            if r == 1:
                lits.append(v)
            elif r == 2:
                lits.append(-v)
        if lits:
            all_clauses.append(clause(lits))
    all_clauses.sort(key=lambda C: (len(C), C))
    weights = [Fraction(1, 2 ** len(C)) for C in all_clauses]
    full = frozenset(range(1, n + 1))
    found = []

    def rec(i: int, chosen: list, total: Fraction):
        if total == 1:
            S = frozenset(chosen)
            if variables(S) == full:
                found.append(S)
            return
        if total > 1 or i == len(all_clauses):
            return
        C = all_clauses[i]
        if all(any(-x in D for x in C) for D in chosen):
            chosen.append(C)
            rec(i + 1, chosen, total + weights[i])
            chosen.pop()
        rec(i + 1, chosen, total)

    rec(0, [], Fraction(0))
    return frozenset(canonical_form(S) for S in found)


_CATALOG_CACHE: dict = {}


def cached_catalog(n: int) -> Catalog:
    """Default-parameter catalog for n, computed once per process."""
    if n not in _CATALOG_CACHE:
        _CATALOG_CACHE[n] = enum_uclash(n)
    return _CATALOG_CACHE[n]


def desk_minnmh(k: int, n_max: int) -> int:
    """Max min-var-degree over catalog entries with deficiency k, n <= n_max."""
    return _desk_max(k, n_max, lambda e: e.minvdeg)


def desk_maxsmarh(k: int, n_max: int) -> int:
    """Max number of full clauses over catalog entries with deficiency k, n <= n_max."""
    return _desk_max(k, n_max, lambda e: e.nfc)


def _desk_max(k: int, n_max: int, key) -> int:
    if k < 1:
        raise ParameterOutOfRange(f"deficiency must be >= 1, got {k}")
    if not 1 <= n_max <= DEFAULT_N_CAP:
        raise ParameterOutOfRange(f"n_max must be in 1..{DEFAULT_N_CAP}, got {n_max}")
    best = 0
    for n in range(1, n_max + 1):
        for e in cached_catalog(n).entries:
            if e.delta == k:
                best = max(best, key(e))
    return best


def _entry_id(S) -> str:
    from .dimacs import write_dimacs

    return hashlib.sha256(write_dimacs(S).encode()).hexdigest()[:12]


def save_catalog(catalog: Catalog, out_dir) -> tuple:
    """Persist as a concatenated-DIMACS bundle plus a JSON-lines sidecar."""
    from .dimacs import write_dimacs

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    cnfs = out / f"catalog-n{catalog.var_count}.cnfs"
    meta = out / f"catalog-n{catalog.var_count}.meta.jsonl"
    with cnfs.open("w") as fh, meta.open("w") as mh:
        for e in catalog.entries:
            ident = _entry_id(e.clauses)
            fh.write(f"c id {ident}\n")
            fh.write(write_dimacs(e.clauses))
            mh.write(
                json.dumps(
                    {
                        "id": ident,
                        "n": e.n,
                        "delta": e.delta,
                        "minvdeg": e.minvdeg,
                        "nfc": e.nfc,
                        "sigma": e.sigma,
                        "nonsingular": e.nonsingular,
                        "partial": catalog.partial,
                    },
                    sort_keys=True,
                )
                + "\n"
            )
    return cnfs, meta


def load_catalog(out_dir, n: int) -> Catalog:
    """Re-read a persisted catalog, recomputing and checking entry measures."""
    from .dimacs import parse_dimacs

    out = Path(out_dir)
    cnfs = (out / f"catalog-n{n}.cnfs").read_text()
    metas = [
        json.loads(line)
        for line in (out / f"catalog-n{n}.meta.jsonl").read_text().splitlines()
        if line.strip()
    ]
    blocks = []
    current: list = []
    for line in cnfs.splitlines():
        if line.startswith("c id "):
            if current:
                blocks.append("\n".join(current) + "\n")
            current = []
        else:
            current.append(line)
    if current:
        blocks.append("\n".join(current) + "\n")
    if len(blocks) != len(metas):
        raise ValueError("catalog body and sidecar disagree on entry count")
    entries = []
    partial = False
    for block, info in zip(blocks, metas):
        S = parse_dimacs(block).clause_set()
        e = _make_entry(S)
        for field in ("n", "delta", "minvdeg", "nfc", "sigma", "nonsingular"):
            if getattr(e, field) != info[field]:
                raise ValueError(f"catalog entry {info['id']} fails {field} recheck")
        partial = partial or bool(info.get("partial"))
        entries.append(e)
    return Catalog(n, tuple(entries), "loaded", partial)
