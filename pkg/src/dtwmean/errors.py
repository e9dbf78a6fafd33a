"""Exception types shared across the package."""


class DtwMeanError(Exception):
    """Base class for all package errors."""


class GuardError(DtwMeanError):
    """An exhaustive-enumeration size guard was exceeded."""


class DataFormatError(DtwMeanError):
    """A data file could not be parsed."""
