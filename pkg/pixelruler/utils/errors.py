"""Exceptions raised by pixelruler.

Every error is a ValueError so callers catching ValueError keep working."""


class PixelRulerError(ValueError):
    """Base class for all pixelruler errors."""


class InvalidArgumentError(PixelRulerError):
    """An argument is outside the domain of the operation (bad dimension, mismatched axes, out-of-range value)."""


class CoordinateParseError(PixelRulerError):
    """No coordinate pair could be extracted from a piece of model output.

    Args:
        text (str): the offending text
    """

    def __init__(self, text: str):
        self.text = text
        super().__init__(f"no coordinate pair found in: {text!r}")


class InvalidInputError(PixelRulerError):
    """Input records are inconsistent (duplicate ids, malformed lines).

    Args:
        message (str): description of the problem
        details (tuple[str, ...]): offending items, e.g. the duplicated ids
    """

    def __init__(self, message: str, details: tuple[str, ...] = ()):
        self.details = details
        if details:
            message = f"{message}: {', '.join(details)}"
        super().__init__(message)


class ArgumentValidationError(PixelRulerError):
    """A combination of command-line flags is invalid."""
