"""Exception hierarchy shared by all modules.

The CLI maps ``InternalInvariantError`` to exit code 70 and ``ParseError``
to exit code 64; everything else it reports as a plain failure.
"""


class PsearError(Exception):
    """Base class for every error raised by this package."""


class InvalidArguments(PsearError, ValueError):
    pass


class UnsupportedDimension(PsearError, ValueError):
    pass


class UnsupportedBase(PsearError, ValueError):
    pass


class GluingViolation(PsearError):
    """An ear does not attach along exactly its boundary."""

    def __init__(self, index, condition):
        self.index = index
        self.condition = condition
        super().__init__(f"ear {index}: {condition}")


class NotConstructible(PsearError):
    pass


class NotCompressed(PsearError):
    pass


class NotAMulticomplex(PsearError, ValueError):
    pass


class PreconditionViolation(PsearError):
    pass


class EtaFBoundViolation(PreconditionViolation):
    pass


class InfeasibleBudget(PsearError):
    pass


class BoundExceeded(PsearError, ValueError):
    pass


class ParseError(PsearError, ValueError):
    pass


class InternalInvariantError(PsearError):
    """A step that the construction guarantees to succeed did not."""


class CapacityExhausted(InternalInvariantError):
    pass


class IdentityViolation(InternalInvariantError):
    pass
