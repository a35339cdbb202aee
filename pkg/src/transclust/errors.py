"""Exception types shared across the package."""


class TransclustError(Exception):
    """Base class for all data and configuration errors raised here."""


class CsvFormatError(TransclustError):
    """Malformed CSV input (message carries the 1-based row number)."""


class InvalidSpecError(TransclustError):
    """A config or synthetic-data spec violates its invariants."""
