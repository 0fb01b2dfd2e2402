"""Exception types shared across the package."""


class DataError(ValueError):
    """A dataset is structurally unusable (too few classes, empty, ...)."""


class ParseError(DataError):
    """A file could not be parsed; message carries row/column context."""


class NumericError(ArithmeticError):
    """A numeric computation failed (non-finite input, solve certificate)."""


class ExperimentError(RuntimeError):
    """An experiment could not produce a result (every grid point failed)."""
