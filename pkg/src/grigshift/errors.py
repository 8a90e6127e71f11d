class GrigshiftError(Exception):
    """Base class for errors raised by this package."""


class ResourceCapError(GrigshiftError, MemoryError):
    """A requested word would exceed the configured length cap."""


class InvalidWordError(GrigshiftError, ValueError):
    """A word or window violates a structural precondition."""


class InsufficientContextError(GrigshiftError, ValueError):
    """A window does not contain the positions an operation needs."""


class PartitionError(GrigshiftError, ValueError):
    """No valid (or no unique) n-partition for a window."""


class FourthPowerError(GrigshiftError, AssertionError):
    """An occurrence of index >= 4 was found; this indicates a bug."""


class ParameterError(GrigshiftError, ValueError):
    """Weight parameters are outside the admissible set or ill-formed."""
