class IrumError(ValueError):
    """Base class for input and precondition failures."""


class PreconditionError(IrumError):
    pass


class SizeLimitError(IrumError):
    """An enumeration would exceed a declared size guard."""


class DatasetError(IrumError):
    """Malformed dataset document."""
