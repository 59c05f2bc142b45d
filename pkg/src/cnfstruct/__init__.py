"""Structural analysis of CNF clause-sets.

Deficiency, surplus and matching autarkies; minimal-unsatisfiability
transformations; the non-Mersenne degree-bound engine; an autarky-reduction
pipeline; desk-scale enumeration of unsatisfiable hitting clause-sets; and a
DIMACS-speaking command line tying it together.
"""

from .core import (
    Clause,
    Literal,
    Measures,
    MultiClauseSet,
    PartialAssignment,
    apply_assignment,
    clause,
    clause_set,
    degrees,
    dp_reduce,
    measures,
    resolvent,
    restrict,
)
from .dimacs import parse_dimacs, write_dimacs
from .matching import (
    KernelTrace,
    SurplusResult,
    delta_star,
    find_matching_autarky,
    is_matching_lean,
    is_matching_satisfiable,
    matching_lean_kernel,
    minimal_surplus_witness,
    surplus,
)

__version__ = "0.1.0"

__all__ = [
    "Clause",
    "Literal",
    "Measures",
    "MultiClauseSet",
    "PartialAssignment",
    "KernelTrace",
    "SurplusResult",
    "apply_assignment",
    "clause",
    "clause_set",
    "degrees",
    "delta_star",
    "dp_reduce",
    "find_matching_autarky",
    "is_matching_lean",
    "is_matching_satisfiable",
    "matching_lean_kernel",
    "measures",
    "minimal_surplus_witness",
    "parse_dimacs",
    "resolvent",
    "restrict",
    "surplus",
    "write_dimacs",
    "__version__",
]
