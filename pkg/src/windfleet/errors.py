"""Exception types shared across the package."""


class WindfleetError(Exception):
    """Base class for all package errors."""


class InvalidInputError(WindfleetError):
    """An argument violates a documented precondition."""


class ConfigError(WindfleetError):
    """A configuration file or config object is inconsistent or incomplete."""


class IngestionError(WindfleetError):
    """A data file could not be parsed.  Carries the offending line number."""

    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class SolverError(WindfleetError):
    """The optimization kernel failed (numerical breakdown, iteration cap)."""


class ConsistencyError(WindfleetError):
    """An internal invariant was violated (e.g. coupling broken after rounding)."""


class ScheduleViolationError(WindfleetError):
    """A schedule violates a named fleet constraint (capacity, travel, ...)."""
