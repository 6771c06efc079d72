"""Exception hierarchy shared by the library and the command line."""


class TTPError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(TTPError):
    """Input text does not have a recognised shape."""


class ValidationError(TTPError):
    """Input parsed but violates a structural invariant (symmetry, sign...)."""


class UnsupportedSizeError(TTPError):
    """The team count is outside what the construction handles."""


class ConsistencyError(TTPError):
    """An internal identity check failed; indicates a bug, not bad input."""
