"""Exception hierarchy shared by all legw modules."""


class LegwError(Exception):
    """Base class for every error raised by legw."""


class NonTangent(LegwError, ValueError):
    """A vector that must be tangent to S^5 at a point is not."""


class OrderTooHigh(LegwError, ValueError):
    """Requested derivative order exceeds what the calculus supports."""


class NotPeriodic(LegwError, ValueError):
    """A chart-type immersion was asked to be sampled on a periodic grid."""


class EvaluationOutsideChart(LegwError, ValueError):
    """Chart evaluation requested outside the admissible domain."""


class DegenerateMetric(LegwError, ArithmeticError):
    """Induced metric has det g <= threshold somewhere."""


class DriftExceeded(LegwError, RuntimeError):
    """Legendre residual grew beyond the configured ceiling."""


class StepRejected(LegwError, RuntimeError):
    """A time step could not be made energy-decreasing."""


class FormatError(LegwError, ValueError):
    """Malformed checkpoint file."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
