"""Exception hierarchy shared by all bohrkit modules."""


class BohrkitError(Exception):
    """Base class for all errors raised by bohrkit."""


class DomainError(BohrkitError, ValueError):
    """An input lies outside the documented domain of an operation."""


class AccuracyError(BohrkitError):
    """A certified truncation remainder exceeds the accuracy contract."""


class NoRootError(BohrkitError):
    """No sign change was found while scanning for a radius."""


class NotFalsifiableError(BohrkitError):
    """The radius function stays nonnegative past the root, so no
    sharpness witness can exist in the requested window."""


class NoWitnessError(BohrkitError):
    """The witness search was exhausted without finding an excess."""


class UsageError(BohrkitError):
    """Bad command-line arguments."""
