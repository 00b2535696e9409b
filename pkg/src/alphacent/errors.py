"""Exception hierarchy shared by the library and the command line."""


class AlphacentError(Exception):
    """Base class for all errors raised by :mod:`alphacent`."""


class GraphFormatError(AlphacentError, ValueError):
    """Input text could not be parsed into a graph."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DegenerateGraphError(AlphacentError, ValueError):
    """The graph has no edges (or no spectrum) for the requested quantity."""


class NumericalError(AlphacentError, ArithmeticError):
    """A numerical routine failed, e.g. a divergent series or singular solve."""


class DatasetError(AlphacentError, LookupError):
    """Unknown dataset name or missing dataset files."""
