"""Exception hierarchy shared across the package.

Two broad classes: bad input (``ValidationError``, maps to CLI exit code 2)
and a numerical procedure that failed to deliver its tolerance
(``NumericalError``, exit code 3).
"""


class ValidationError(ValueError):
    """Input outside an operation's admissible domain."""


class NumericalError(RuntimeError):
    """A numerical procedure failed to meet its accuracy contract."""


class LaxConditionError(ValidationError):
    """Requested wave is not an admissible shock for its family."""


class DegenerateWaveError(ValidationError):
    """Zero-strength wave where a genuine jump is required."""


class TwoShockConfigurationError(ValidationError):
    """No middle state solves the requested two-shock configuration."""


class VacuumError(ValidationError):
    """Wave curves fail to intersect at positive specific volume."""


class TruncationRadiusError(NumericalError):
    """Profile tails have not settled at the requested truncation radius."""


class SingularShiftError(ValidationError):
    """Outgoing-state jumps are (numerically) linearly dependent."""


class TrackingError(NumericalError):
    """Feature tracking found no usable signal in its search window."""


class EmptyRegionError(ValidationError):
    """Every cell was masked; the exclusion half-width is too large."""
