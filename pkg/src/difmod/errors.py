"""Exception hierarchy shared across the package."""


class DifmodError(Exception):
    """Base class for all library errors."""


class ParseError(DifmodError):
    """Malformed textual input (ring descriptors, element strings, documents)."""


class ValidationError(DifmodError):
    """Structurally invalid data: shape mismatches, ill-defined matrices, d*d != 0."""


class PreconditionError(DifmodError):
    """An operation was called outside its domain of validity."""
