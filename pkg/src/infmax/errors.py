"""Exception types shared across the package."""


class InfmaxError(Exception):
    """Base class for all errors raised by this package."""


class EdgeListParseError(InfmaxError):
    """Malformed edge-list input; message carries the offending line number."""


class ValidationError(InfmaxError):
    """An argument or graph invariant was violated."""


class InstanceTooLargeError(InfmaxError):
    """An exact (enumeration) routine refused an instance beyond its bounds."""


class ConfigError(InfmaxError):
    """Bad experiment or CLI configuration."""
