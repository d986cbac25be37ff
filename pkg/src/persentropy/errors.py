"""Exception types shared across the package.

Each class maps to one CLI exit code (see cli.EXIT_CODES), so keep the
hierarchy flat and the categories coarse.
"""


class PersentropyError(Exception):
    """Base class for all package-specific errors."""


class ParseError(PersentropyError):
    """Malformed input file; carries a 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvalidSignalError(PersentropyError):
    """Signal invariant violated (non-finite value, duplicate time, ...)."""


class IncompatibleSignalsError(PersentropyError):
    """Two signals do not share a time grid."""


class EmptyBarcodeError(PersentropyError):
    """Entropy of an empty barcode is undefined."""


class OracleTooLargeError(PersentropyError):
    """Boundary-matrix oracle refuses inputs over its size guard."""


class OracleMismatchError(PersentropyError):
    """Fast path and reduction oracle disagree; indicates a bug."""


class BoundInapplicableError(PersentropyError):
    """Stability-bound constant falls outside the modulus' valid range."""


class DegenerateLabelsError(PersentropyError):
    """Classifier input contains only one class."""


class StratificationError(PersentropyError):
    """A cross-validation fold is missing one of the classes."""

    def __init__(self, message: str, fold: int | None = None):
        self.fold = fold
        if fold is not None:
            message = f"fold {fold}: {message}"
        super().__init__(message)
