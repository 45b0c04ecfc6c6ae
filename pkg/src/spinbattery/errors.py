"""Exception hierarchy shared across the package."""


class SpinBatteryError(Exception):
    """Base class for all package errors."""


class ValidationError(SpinBatteryError):
    """An argument violates a documented precondition."""


class DegenerateSpectrumError(SpinBatteryError):
    """Spectral width below tolerance; normalization is undefined."""


class ResourceLimitError(SpinBatteryError):
    """Requested chain length exceeds the configured dense-matrix limit."""


class AggregateFailureError(SpinBatteryError):
    """Too many disorder realizations failed to produce a trustworthy average."""


class ConfigError(SpinBatteryError):
    """Invalid run configuration; message names the offending field."""

    def __init__(self, message: str, field: str | None = None, line: int | None = None):
        self.field = field
        self.line = line
        prefix = ""
        if line is not None:
            prefix += f"line {line}: "
        if field is not None:
            prefix += f"field '{field}': "
        super().__init__(prefix + message)
