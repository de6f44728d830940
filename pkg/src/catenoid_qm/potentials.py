"""Effective potentials for a particle bound to the catenoid surface.

Separating the azimuthal dependence as psi = e^{i m phi} Phi(zeta), the
curvature-induced problem reduces to

    -Phi'' + V(zeta) Phi = 0,   V(zeta) = m^2 - eps cosh^2(zeta) - sech^2(zeta),

with dimensionless energy eps = 2 m0 E R^2 / hbar^2.  The same equation
carries two useful groupings and two further charts:

* weighted form: -Phi'' + (m^2 - sech^2) Phi = eps cosh^2(zeta) Phi, a
  generalized eigenproblem whose weight cosh^2(zeta) is the area element --
  this is what the solver diagonalizes;
* eta chart: Phi'' + (1/x) Phi' + B(x) Phi = 0 with x = eta+1 and

      B = eps/4 - (m^2 - eps/2)/x^2 + (1/4)(eps/x^4 + 16/(x^2+1)^2),

  so V - E = -B, with the renormalized V_r - E = -(B - eps/4) -> 0 at
  infinity;
* arc chart: after u = sinh(zeta) and the Liouville amplitude map the
  scattering problem is -chi'' + W(u) chi = eps chi with

      W(u) = [m^2 (1+u^2) - 1/2 - u^2/4] / (1+u^2)^2,

  which decays like (m^2 - 1/4)/u^2: critically attractive for m = 0.

The Poschl-Teller family -lambda(lambda+1) sech^2(zeta) is included as the
reference: integer lambda is reflectionless, and lambda = 1 has the single
bound state eps = -1 with Phi = sech(zeta).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .charts import EtaCoordinate
from .errors import ChartDomainError, CoordinateRangeError

# cosh^2 overflows double just above |zeta| = 355; refuse beyond 350.
ZETA_OVERFLOW_GUARD = 350.0


@dataclass(frozen=True)
class ChannelSpec:
    """Angular-momentum channel: integer m and dimensionless energy eps."""

    m: int
    eps: float

    def __post_init__(self) -> None:
        if int(self.m) != self.m:
            raise ValueError(f"m must be an integer, got {self.m}")
        object.__setattr__(self, "m", int(self.m))


@dataclass(frozen=True)
class PotentialCurve:
    chart: str
    grid: np.ndarray
    values: np.ndarray
    channel: ChannelSpec


@dataclass(frozen=True)
class PoschlTellerSpec:
    """Well -lam(lam+1) sech^2(zeta); lam = 1 is the Bargmann reflectionless case."""

    lam: float

    def __post_init__(self) -> None:
        if self.lam < 0.0:
            raise ValueError("lambda must be nonnegative")

    @property
    def depth(self) -> float:
        return self.lam * (self.lam + 1.0)


def _guard_zeta(zeta) -> None:
    if np.any(np.abs(np.asarray(zeta)) > ZETA_OVERFLOW_GUARD):
        raise CoordinateRangeError(
            f"|zeta| > {ZETA_OVERFLOW_GUARD} overflows cosh^2; use the eta or "
            "arc chart for larger domains"
        )


def v_zeta(channel: ChannelSpec, zeta):
    """Full zeta-chart coefficient V(zeta) = m^2 - eps cosh^2(zeta) - sech^2(zeta)."""
    _guard_zeta(zeta)
    c = np.cosh(zeta)
    return channel.m**2 - channel.eps * c * c - 1.0 / (c * c)


def weighted_problem_terms(m: int):
    """(q, w) callables of the weighted grouping -Phi'' + q Phi = eps w Phi,
    q = m^2 - sech^2, w = cosh^2 (the area-element factor)."""

    def q(zeta):
        return m * m - 1.0 / np.cosh(zeta) ** 2

    def w(zeta):
        return np.cosh(zeta) ** 2

    return q, w


def eta_bracket(channel: ChannelSpec, eta):
    """The bracket B of the eta-chart equation Phi'' + (1/x) Phi' + B Phi = 0."""
    x = eta + 1.0
    x2 = x * x
    return (
        channel.eps / 4.0
        - (channel.m**2 - channel.eps / 2.0) / x2
        + 0.25 * (channel.eps / x2**2 + 16.0 / (x2 + 1.0) ** 2)
    )


def v_eta(channel: ChannelSpec, ec: EtaCoordinate) -> float:
    """eta-chart bracket at a patch point (identical on both patches)."""
    return float(eta_bracket(channel, ec.eta))


def assembled_equation_coefficients(channel: ChannelSpec, ec: EtaCoordinate):
    """(a2, a1, a0) with a2 Phi'' + a1 Phi' + a0 Phi = 0 in the eta chart:
    (1, 1/x, bracket)."""
    x = ec.x
    return 1.0, 1.0 / x, float(eta_bracket(channel, ec.eta))


def v_minus_e(channel: ChannelSpec, eta):
    """V - E = -B: the potential grouping of the eta-chart equation."""
    return -eta_bracket(channel, eta)


def v_renormalized(channel: ChannelSpec, eta):
    """V_r - E: V - E with its eta -> infinity constant (-eps/4) removed."""
    return -eta_bracket(channel, eta) + channel.eps / 4.0


def v_scatter(m: int, u):
    """Scattering potential in the arc chart,
    W(u) = [m^2 (1+u^2) - 1/2 - u^2/4] / (1+u^2)^2, with
    -chi'' + W chi = eps chi and free-wave asymptotics."""
    u2 = np.square(u)
    opu2 = 1.0 + u2
    return (m * m * opu2 - 0.5 - 0.25 * u2) / (opu2 * opu2)


def poschl_teller_potential(spec: PoschlTellerSpec, zeta):
    """-lam(lam+1) sech^2(zeta)."""
    return -spec.depth / np.cosh(zeta) ** 2


def poschl_teller_transmission(spec: PoschlTellerSpec, k: float) -> float:
    """Closed-form transmission probability through -lam(lam+1) sech^2.

    |T|^2 = sinh^2(pi k) / (sinh^2(pi k) + cos^2((pi/2) sqrt(1 + 4 lam(lam+1)))),
    exactly 1 for integer lam (the argument is an odd multiple of pi/2).
    """
    if not k > 0.0:
        raise ChartDomainError("transmission requires k > 0")
    if float(spec.lam).is_integer():
        return 1.0
    s = math.sinh(math.pi * k) ** 2
    c = math.cos(0.5 * math.pi * math.sqrt(1.0 + 4.0 * spec.depth)) ** 2
    return s / (s + c)


def sample_curve(
    chart: str,
    channel: ChannelSpec,
    grid: np.ndarray,
    renormalized: bool = False,
) -> PotentialCurve:
    """Sample a potential curve on a grid in the named chart.

    chart "zeta" -> V(zeta); "eta" -> V - E (or V_r - E when renormalized);
    "arc" -> W(u).  The grid must be strictly increasing.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or len(grid) < 2 or np.any(np.diff(grid) <= 0.0):
        raise ValueError("grid must be strictly increasing")
    if renormalized and chart != "eta":
        raise ValueError("renormalized curves exist only in the eta chart")
    if chart == "zeta":
        values = v_zeta(channel, grid)
    elif chart == "eta":
        if np.any(grid < 0.0):
            raise ChartDomainError("eta grid must be nonnegative")
        values = v_renormalized(channel, grid) if renormalized else v_minus_e(channel, grid)
    elif chart == "arc":
        values = v_scatter(channel.m, grid)
    else:
        raise ValueError(f"unknown chart {chart!r}")
    return PotentialCurve(chart=chart, grid=grid, values=np.asarray(values), channel=channel)
