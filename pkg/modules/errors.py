# modules/errors.py

class DisentangleError(Exception):
    """Base class for every error raised by the checker."""


class CarrierMismatchError(DisentangleError, ValueError):
    """Two morphisms do not meet: a domain or codomain does not match."""


class FactorStructureError(DisentangleError, ValueError):
    """A carrier lacks the factor structure an operation needs, or factor counts differ."""


class InvalidStructureError(DisentangleError, ValueError):
    """A value violates a construction-time invariant (labels, rows, tables)."""


class SearchBudgetExceeded(DisentangleError):
    """A size cap was hit before an enumeration could start."""


class InstanceFileError(DisentangleError):
    """An instance file is missing, unreadable or does not match the schema."""


class ConsistencyError(DisentangleError):
    """A computed report contradicts one of the implications proven for the definitions."""
