"""Exception types shared across the package."""

from __future__ import annotations


class AddXorError(Exception):
    """Base class for every error raised by :mod:`addxor`."""


class ModulusError(AddXorError, ValueError):
    """Invalid modulus, or operands living in different moduli."""


class GuardExceeded(AddXorError):
    """A dense table or enumeration would exceed a configured size guard."""


class NotCanonical(AddXorError):
    """A bit polynomial cannot be read as an index-independent weight <= 1 form."""


class FreeTermPresent(NotCanonical):
    pass


class WeightExceeded(NotCanonical):
    pass


class ExprSyntaxError(AddXorError, ValueError):
    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class UnknownVariable(AddXorError, ValueError):
    pass


class TableFormatError(AddXorError, ValueError):
    """Malformed truth-table document; ``position`` locates the offending item."""

    def __init__(self, message: str, position: str | None = None) -> None:
        super().__init__(message if position is None else f"{message} ({position})")
        self.position = position


class UnsupportedModulus(AddXorError):
    pass


class VerificationFailed(AddXorError):
    """A claimed theorem failed an exhaustive check; indicates a bug."""
