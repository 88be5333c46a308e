"""
Exception hierarchy for the total p-differentials toolkit.

Every error raised on purpose by the library derives from TotalPError so the
command-line runner can map it to exit code 1. Negative mathematical outcomes
(no splitting, no global lift) are returned as values, never raised.
"""


class TotalPError(Exception):
    """Base class for all toolkit errors."""


class StructuralError(TotalPError, ValueError):
    """Operands live in different parents, or an argument is malformed."""


class ParseError(TotalPError, ValueError):
    """A polynomial literal or job document could not be parsed."""

    def __init__(self, message, line=None, column=None, source=None):
        self.line = line
        self.column = column
        self.source = source
        self.detail = message
        location = []
        if line is not None:
            location.append(f"line {line}")
        if column is not None:
            location.append(f"column {column}")
        if location:
            message = f"{message} ({', '.join(location)})"
        super().__init__(message)


class PresentationError(TotalPError):
    """A presentation is not flat-adapted (non-unit leading coefficient)."""


class NotFlatError(TotalPError):
    """The algebra has p-torsion; carries the offending element."""

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class DegenerateLocalizationError(TotalPError):
    """The element to invert vanishes modulo p."""


class InvalidDerivationError(TotalPError):
    """Generator values of a total p-derivation violate a relation."""


class UnsupportedMapError(TotalPError):
    """A lifting problem was posed along a map of unsupported shape."""


class InconsistencyError(TotalPError):
    """An internal identity failed; signals a bug or an invalid homomorphism."""


class InvalidLiftError(TotalPError):
    """A Frobenius lift or splitting fails its defining conditions."""


class GluingError(TotalPError):
    """A glued scheme failed one or more gluing checks."""

    def __init__(self, message, failures=None):
        self.failures = list(failures or [])
        if self.failures:
            message = message + ": " + "; ".join(self.failures)
        super().__init__(message)


class ObstructionError(TotalPError):
    """A chart has no splitting at the requested degree bound."""

    def __init__(self, message, chart=None):
        self.chart = chart
        super().__init__(message)


class ChartCoordinateError(TotalPError):
    """A chart admits no constant-pivot coordinate system."""


class InputError(TotalPError):
    """User-supplied data is mathematically invalid for the request."""
