"""Exception types shared across the package."""


class SummlabError(Exception):
    """Base class for library errors."""


class PreconditionError(SummlabError, ValueError):
    """An argument violates an operation's precondition."""


class OutOfRangeError(SummlabError, IndexError):
    """An index (degree, row) lies outside the stored data."""


class DomainError(SummlabError, ValueError):
    """A value is outside the domain where an expression is defined."""


class DegenerateError(SummlabError, ValueError):
    """A quantity needed as a denominator or bound vanishes."""
