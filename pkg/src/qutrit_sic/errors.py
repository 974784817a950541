"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class QutritSicError(Exception):
    """Base class for all errors raised by this package."""


class UsageError(QutritSicError, ValueError):
    """Malformed call: bad index, empty operand list, bad selector string."""


class DomainError(QutritSicError, ValueError):
    """An input violates a mathematical precondition of the operation."""


class SicConstructionError(DomainError):
    """A fiducial failed to generate a SIC within tolerance."""

    def __init__(self, message, worst_overlap_residual=None):
        super().__init__(message)
        self.worst_overlap_residual = worst_overlap_residual
