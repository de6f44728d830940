"""Exception types shared across the package."""


class DegenerateSectionError(ValueError):
    """The section scale is a = 0 (zero-radius catenoid); the geometry degenerates."""


class ChartDomainError(ValueError):
    """A coordinate lies outside the domain of the requested chart."""


class ThroatChartError(ChartDomainError):
    """The radial chart was evaluated at (or too near) its pole on the throat.

    g_rr = r^2/(r^2 - b0^2) diverges at r = b0; this is a chart artifact, not a
    geometric singularity.  Callers should switch to the (zeta, phi) chart.
    """


class CoordinateRangeError(ValueError):
    """A coordinate exceeds the safe evaluation range (cosh overflow guard)."""


class ConfigurationError(ValueError):
    """A solver configuration is unusable (e.g. domain does not reach the
    classically forbidden region)."""


class ConvergenceError(RuntimeError):
    """A numerical computation failed to meet its accuracy contract."""
