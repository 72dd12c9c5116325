"""Exception hierarchy shared by all drsa modules."""


class DrsaError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(DrsaError, ValueError):
    """An operation was called outside its domain (bad threshold, missing value, empty P...)."""


class ValidationError(DrsaError, ValueError):
    """A table or document violates a structural invariant."""


class ParseError(ValidationError):
    """A document could not be parsed.

    ``locus`` names the offending line or field when known.
    """

    def __init__(self, message, locus=None):
        self.locus = locus
        if locus is not None:
            message = f"{locus}: {message}"
        super().__init__(message)
