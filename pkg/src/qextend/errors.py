"""Exception hierarchy shared by all qextend modules."""

from __future__ import annotations


class QextendError(Exception):
    """Base class for every error raised by qextend."""


class DomainError(QextendError, ValueError):
    """An argument lies outside the domain of the operation."""


class RangeError(QextendError, OverflowError):
    """An integer result does not fit the supported range."""


class ShapeError(QextendError, ValueError):
    """A component count does not match the geometry of the architecture."""


class DegenerateInputError(QextendError, ValueError):
    """Data cannot determine a fit (e.g. every abscissa identical)."""


class UnknownResourceError(QextendError, LookupError):
    """A resource name is not part of the platform."""

    def __str__(self) -> str:  # LookupError would repr() the message
        return str(self.args[0]) if self.args else ""


class ParseError(QextendError, ValueError):
    """A document could not be parsed or failed validation."""


class UnsupportedFormatError(QextendError, ValueError):
    """The requested report format is not available for this report."""
