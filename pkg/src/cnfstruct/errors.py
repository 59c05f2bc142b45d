"""Exception hierarchy shared across the package."""


class CnfstructError(Exception):
    """Base class for all domain errors raised by cnfstruct."""


class TautologicalClause(CnfstructError):
    """A clause contains a variable in both signs.

    Tautological clauses are a model-level error and are never silently
    repaired.
    """


class DimacsSyntaxError(CnfstructError):
    """Malformed DIMACS input (bad token, missing header, unterminated clause)."""


class HeaderMismatch(DimacsSyntaxError):
    """Strict parsing: clause count or variable range disagrees with the header."""


class NotResolvable(CnfstructError):
    """Two clauses clash in zero or more than one variable."""


class NotHitting(CnfstructError):
    """Operation requires a hitting clause-set."""


class NotUnsatHitting(CnfstructError):
    """Operation requires an unsatisfiable hitting clause-set."""


class NotMU(CnfstructError):
    """Operation requires a minimally unsatisfiable clause-set."""


class PreconditionViolated(CnfstructError):
    """A structural precondition of a transformation failed."""


class VariableCollision(PreconditionViolated):
    """A variable supposed to be fresh already occurs."""


class EmptyVariableSet(CnfstructError):
    """Operation requires at least one variable."""


class ParameterOutOfRange(CnfstructError):
    """Numeric parameter outside its documented domain."""


class InvalidBoundsFunction(CnfstructError):
    """Bounds-function prefix must start with 2 and be monotone."""


class TooManyVariables(CnfstructError):
    """Exhaustive isomorphism machinery is capped at 6 variables."""
