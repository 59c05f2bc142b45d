"""Bit-exact DIMACS CNF parsing and serialisation.

Multiplicities are preserved: repeated clause lines accumulate, and writing
repeats each clause according to its multiplicity.  The empty clause is legal
and serialises as a bare ``0`` line.  Variables need not be contiguous; the
header's variable count is the maximum index occurring.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Clause, MultiClauseSet, clause, sorted_clauses, variables
from .errors import DimacsSyntaxError, HeaderMismatch


@dataclass(frozen=True)
class DimacsDocument:
    declared_vars: int
    declared_clauses: int
    clauses: tuple  # ordered, with repetitions


def _tokens(text: str):
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("c"):
            continue
        if stripped.startswith("p"):
            yield lineno, stripped, None
            continue
        for tok in stripped.split():
            yield lineno, None, tok


def parse_dimacs_document(source, strict: bool = False) -> DimacsDocument:
    """Parse DIMACS text into an ordered clause list plus header counts.

    ``source`` may be text, bytes, or a readable file object.  Comment lines
    start with ``c``; clauses are 0-terminated integer runs and may span
    lines.  Strict mode additionally enforces the header's clause count and
    variable range (:class:`HeaderMismatch`).
    """
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, (bytes, bytearray)):
        source = source.decode("ascii")
    declared = None
    current: list[int] = []
    out: list[Clause] = []
    for lineno, header, tok in _tokens(source):
        if header is not None:
            if declared is not None:
                raise DimacsSyntaxError(f"line {lineno}: duplicate header")
            parts = header.split()
            if len(parts) != 4 or parts[0] != "p" or parts[1] != "cnf":
                raise DimacsSyntaxError(f"line {lineno}: malformed header {header!r}")
            try:
                nv, nc = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsSyntaxError(f"line {lineno}: malformed header {header!r}")
            if nv < 0 or nc < 0:
                raise DimacsSyntaxError(f"line {lineno}: negative header counts")
            declared = (nv, nc)
            continue
        if declared is None:
            raise DimacsSyntaxError(f"line {lineno}: clause data before 'p cnf' header")
        try:
            lit = int(tok)
        except ValueError:
            raise DimacsSyntaxError(f"line {lineno}: bad token {tok!r}")
        if lit == 0:
            out.append(clause(current))  # raises TautologicalClause on v, -v
            current = []
        else:
            current.append(lit)
    if declared is None:
        raise DimacsSyntaxError("missing 'p cnf' header")
    if current:
        raise DimacsSyntaxError("unterminated clause at end of input")
    nv, nc = declared
    if strict:
        if len(out) != nc:
            raise HeaderMismatch(f"header declares {nc} clauses, found {len(out)}")
        high = max((abs(x) for C in out for x in C), default=0)
        if high > nv:
            raise HeaderMismatch(f"header declares {nv} variables, found index {high}")
    return DimacsDocument(nv, nc, tuple(out))


def parse_dimacs(source, strict: bool = False) -> MultiClauseSet:
    """Parse DIMACS text; repeated identical clauses accumulate multiplicity."""
    doc = parse_dimacs_document(source, strict=strict)
    return MultiClauseSet.from_clauses(doc.clauses)


def write_dimacs(F) -> str:
    """Serialise to DIMACS; round-trips through :func:`parse_dimacs` exactly.

    Clauses appear in canonical order, each repeated per multiplicity.
    """
    from .core import as_multi

    M = as_multi(F)
    vs = variables(M)
    n = max(vs) if vs else 0
    lines = [f"p cnf {n} {M.total()}"]
    for C in sorted_clauses(M):
        body = " ".join(str(x) for x in C)
        line = f"{body} 0" if body else "0"
        lines.extend([line] * M[C])
    return "\n".join(lines) + "\n"
