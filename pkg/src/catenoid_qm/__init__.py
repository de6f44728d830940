"""Quantum mechanics on the catenoid viewed as a 2D wormhole section.

Library layout:

* geometry   -- embeddings, metrics, curvatures, the da Costa potential and
                the wormhole-equivalence audit;
* charts     -- the two-patch eta atlas and the arc (sinh) chart with the
                Liouville amplitude map;
* potentials -- effective potentials in every chart plus the Poschl-Teller
                reference family;
* solver     -- Numerov integration, shooting/matrix bound states, plane-wave
                scattering, residuals and the cross-chart check;
* app        -- channel classification, claim audits, figure emission,
                deterministic sweeps and the CLI.
"""

from . import app, charts, geometry, potentials, solver
from .errors import (
    ChartDomainError,
    ConfigurationError,
    ConvergenceError,
    CoordinateRangeError,
    DegenerateSectionError,
    ThroatChartError,
)

__version__ = "0.1.0"

__all__ = [
    "app",
    "charts",
    "geometry",
    "potentials",
    "solver",
    "ChartDomainError",
    "ConfigurationError",
    "ConvergenceError",
    "CoordinateRangeError",
    "DegenerateSectionError",
    "ThroatChartError",
    "__version__",
]
