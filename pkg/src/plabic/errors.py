"""Exception hierarchy shared across the package."""


class PlabicError(Exception):
    """Base class for all errors raised by this package."""


class InputError(PlabicError):
    """Invalid argument or unmet precondition of an operation."""


class GenericityError(PlabicError):
    """A configuration violates a genericity assumption (degenerate geometry)."""


class ParseError(PlabicError):
    """Malformed network file or rational literal."""


class ResourceCapError(PlabicError):
    """An enumeration exceeded its configured size cap."""


class InternalInconsistencyError(PlabicError):
    """A condition that valid inputs cannot trigger; indicates a bug or a broken net."""
