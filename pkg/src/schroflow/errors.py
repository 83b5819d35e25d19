"""Exception types shared across the package."""


class SchroflowError(Exception):
    """Base class for all schroflow errors."""


class NonProjectable(SchroflowError):
    """Ambient point cannot be projected onto the target manifold.

    Raised for the zero vector (sphere) or for points outside the
    timelike cone / on the wrong sheet (hyperbolic plane).  During a
    flow this signals that the state left the chart and the run must
    abort.
    """


class ResolutionExceeded(SchroflowError):
    """Requested derivative order is too high for the grid resolution."""


class ParameterImbalance(SchroflowError):
    """Interpolation-inequality parameters violate the balance relation."""


class ExcludedEndpoint(SchroflowError):
    """Parameter set hits the forbidden a=1 endpoint of the interpolation inequality."""


class MidpointDiverged(SchroflowError):
    """Fixed-point iteration of the implicit midpoint step did not converge.

    Usually means the time step is too large for the grid.
    """


class BlowUp(SchroflowError):
    """Gradient magnitude crossed the blow-up threshold.

    Carries the offending state so callers can persist it; a blow-up
    exit is a scientific result, not a crash.
    """

    def __init__(self, message, field=None, time=None):
        super().__init__(message)
        self.field = field
        self.time = time


class UsageError(SchroflowError):
    """Invalid configuration or command-line input."""
