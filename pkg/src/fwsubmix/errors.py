"""Exception taxonomy shared by the whole package.

The CLI maps these onto exit codes: configuration/parse problems exit
with 2, runtime solver failures with 3.
"""


class FwsubmixError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(FwsubmixError, ValueError):
    """Vector or matrix shape does not match the problem dimension."""


class OracleFailure(FwsubmixError, RuntimeError):
    """An objective oracle returned NaN/Inf or otherwise misbehaved."""


class DomainError(FwsubmixError, ValueError):
    """Point outside an objective's domain (e.g. singular log-det argument)."""


class ConfigurationError(FwsubmixError, ValueError):
    """Invalid solver or experiment configuration."""


class UnsupportedRegion(FwsubmixError, ValueError):
    """Operation not available for this feasible-region kind."""


class SimplexError(FwsubmixError, RuntimeError):
    """Simplex LMO failed (iteration cap hit or unbounded tableau)."""


class ParseError(FwsubmixError, ValueError):
    """Malformed instance or config file."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
