"""Exception hierarchy for the solver.

Everything raised on purpose derives from WavelineError so callers can
catch solver-domain failures without swallowing genuine bugs.
"""


class WavelineError(Exception):
    """Base class for all solver-domain errors."""


class NonTimelikeVelocity(WavelineError):
    """Velocity with non-positive invariant square where a timelike one is required."""


class SpacelikeSeparation(WavelineError):
    """Endpoint pair whose squared interval is negative."""


class NullSeparation(WavelineError):
    """Endpoint pair on the light cone where a strictly timelike pair is required."""


class ZeroMass(WavelineError):
    """Mass is zero where a strictly positive mass is required."""


class ZeroDuration(WavelineError):
    """Invariant duration is zero or has the wrong sign for the requested branch."""


class BadGrid(WavelineError):
    """World-line lattice with inconsistent shape, too few points, or non-finite data."""


class IndexOutOfRange(WavelineError):
    """Node index outside 0..N."""


class GridMismatch(WavelineError):
    """Two sampled objects that must share a lattice do not."""


class NonPositiveLapse(WavelineError):
    """Lapse profile that is negative somewhere or fails to advance the clock."""


class FlowSingularity(WavelineError):
    """Coefficient flow evaluated at or beyond its finite-time pole.

    ``c_star`` carries the pole location when it is known, else None.
    """

    def __init__(self, message, c_star=None):
        super().__init__(message)
        self.c_star = c_star


class NumericalUnderflow(WavelineError):
    """Wave-functional modulus too small for finite-difference probing."""


class NoConvergence(WavelineError):
    """Iterative search exhausted its iteration budget."""


class DegenerateQ(WavelineError):
    """Logarithmic duration is zero, so the rescaled parametrization collapses."""


class ConfigError(WavelineError):
    """Unusable run configuration: bad file, unknown key, or out-of-range value."""
