"""Differential geometry of the catenoid as a 2D wormhole section.

A catenoid of neck radius R is parametrized by

    x = R cosh(z/R) cos(phi),  y = R cosh(z/R) sin(phi),  z = z,

and is isometric to the equatorial (theta = pi/2) section of a wormhole with
throat radius b0 = R.  A section at fixed theta0 rescales the radius to
a*R with a = sin(theta0).  This module provides the embeddings, the metric in
the (zeta, phi) and (rho, phi) charts, the wormhole-section metric in
(r, phi), the principal curvatures, and the curvature-induced (da Costa)
potential

    V_G = -(hbar^2/2 m0) (H^2 - K) = -(hbar^2/8 m0) (kappa1 - kappa2)^2,

which for the catenoid reduces to -(hbar^2 / 2 m0 (aR)^2) sech^4(zeta).

Conventions: zeta = z/(aR) is dimensionless; all curvatures carry 1/length in
units of the throat radius aR.  Everything here is a pure function of its
arguments; scalar inputs give scalar fields, ndarray inputs broadcast.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (
    ChartDomainError,
    ConvergenceError,
    DegenerateSectionError,
    ThroatChartError,
)

# Relative collar around the throat inside which the rho-chart is refused
# (its g_rr pole is a coordinate artifact; use the zeta chart there).
THROAT_COLLAR = 1e-6


class Chart(Enum):
    Z_PHI = "zeta"
    RHO_PHI = "rho"
    R_WORMHOLE = "r"
    ETA_PLUS = "eta+"
    ETA_MINUS = "eta-"
    ARC_U = "u"


@dataclass(frozen=True)
class CatenoidShape:
    """Throat radius R and dimensionless section scale a = sin(theta0).

    a = 1 is the equatorial section; the effective neck radius is a*R.
    """

    R: float = 1.0
    a: float = 1.0

    def __post_init__(self) -> None:
        if not self.R > 0.0:
            raise ValueError(f"throat radius must be positive, got R={self.R}")
        if not 0.0 <= self.a <= 1.0:
            raise ValueError(f"section scale must lie in [0, 1], got a={self.a}")

    @property
    def effective_radius(self) -> float:
        return self.a * self.R

    @classmethod
    def from_section_angle(cls, R: float, theta0: float) -> "CatenoidShape":
        if not 0.0 <= theta0 <= math.pi:
            raise ValueError("theta0 must lie in [0, pi]")
        return cls(R=R, a=math.sin(theta0))

    def require_nondegenerate(self) -> float:
        """Return a*R, refusing the a = 0 (zero-radius) section."""
        if self.a == 0.0:
            raise DegenerateSectionError(
                "a=0 section (theta0 in {0, pi}) is a zero-radius catenoid"
            )
        return self.a * self.R


@dataclass(frozen=True)
class PhysicalScales:
    """Particle mass, hbar and the length scale R; eps = 2 m0 E R^2 / hbar^2."""

    m0: float = 1.0
    hbar: float = 1.0
    R: float = 1.0

    def __post_init__(self) -> None:
        for name in ("m0", "hbar", "R"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be strictly positive")

    def eps_from_energy(self, energy: float) -> float:
        return 2.0 * self.m0 * energy * self.R**2 / self.hbar**2

    def energy_from_eps(self, eps: float) -> float:
        return eps * self.hbar**2 / (2.0 * self.m0 * self.R**2)


@dataclass(frozen=True)
class ChartPoint:
    """A point in one of the coordinate charts; c2 is the azimuth phi."""

    chart: Chart
    c1: float
    c2: float = 0.0


@dataclass(frozen=True)
class MetricSample:
    """Diagonal metric components and the area-element weight sqrt(g11*g22)."""

    g11: float
    g22: float
    sqrt_g: float

    @classmethod
    def from_components(cls, g11, g22) -> "MetricSample":
        return cls(g11=g11, g22=g22, sqrt_g=np.sqrt(g11 * g22))


@dataclass(frozen=True)
class CurvatureSample:
    kappa1: float
    kappa2: float
    H: float
    K: float


def _check_phi(phi) -> None:
    phi = np.asarray(phi)
    if np.any(phi < 0.0) or np.any(phi >= 2.0 * math.pi):
        raise ChartDomainError("phi must lie in [0, 2*pi)")


def embed_catenoid(shape: CatenoidShape, zeta, phi):
    """Embed (zeta, phi) into R^3: (aR cosh(zeta) cos(phi), aR cosh(zeta) sin(phi), aR zeta)."""
    rho0 = shape.require_nondegenerate()
    _check_phi(phi)
    zeta = np.asarray(zeta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    c = np.cosh(zeta)
    return np.stack(
        np.broadcast_arrays(rho0 * c * np.cos(phi), rho0 * c * np.sin(phi), rho0 * zeta),
        axis=-1,
    )


def catenoid_metric(shape: CatenoidShape, point: ChartPoint) -> MetricSample:
    """Metric components in the (zeta, phi) or (rho, phi) chart.

    Z_PHI:   g11 = cosh^2(zeta),            g22 = (aR)^2 cosh^2(zeta)
    RHO_PHI: g11 = rho^2/(rho^2 - (aR)^2),  g22 = rho^2

    The rho chart has a pole at the throat rho = aR; evaluations inside the
    relative collar THROAT_COLLAR are refused rather than extrapolated.
    """
    rho0 = shape.require_nondegenerate()
    if point.chart is Chart.Z_PHI:
        c2 = np.cosh(point.c1) ** 2
        return MetricSample.from_components(c2, rho0**2 * c2)
    if point.chart is Chart.RHO_PHI:
        rho = point.c1
        if rho < rho0:
            raise ChartDomainError(f"rho={rho} below the throat radius {rho0}")
        if rho - rho0 < THROAT_COLLAR * rho0:
            raise ThroatChartError(
                f"rho={rho} is within the throat collar of the rho-chart pole at "
                f"rho={rho0}; use the zeta chart near the throat"
            )
        g11 = rho**2 / ((rho - rho0) * (rho + rho0))
        return MetricSample.from_components(g11, rho**2)
    raise ChartDomainError(f"catenoid_metric is defined on Z_PHI/RHO_PHI, not {point.chart}")


def wormhole_profile(b0: float, r, branch: int = +1):
    """Embedding profile z(r) = +/- b0 * arccosh(r/b0) of the wormhole section.

    The +/- branches glue at the throat; the upper branch corresponds to
    zeta >= 0 (l-sign = zeta-sign convention).
    """
    if not b0 > 0.0:
        raise ChartDomainError("b0 must be positive")
    r = np.asarray(r, dtype=float)
    if np.any(r < b0):
        raise ChartDomainError("r must satisfy r >= b0")
    sign = 1.0 if branch >= 0 else -1.0
    return sign * b0 * np.arccosh(r / b0)


def wormhole_section_metric(b0: float, theta0: float, r) -> MetricSample:
    """Metric of the theta0-section of the wormhole, g_rr = r^2/(r^2-b0^2), g_phiphi = sin^2(theta0) r^2."""
    if not b0 > 0.0:
        raise ChartDomainError("b0 must be positive")
    if not 0.0 <= theta0 <= math.pi:
        raise ChartDomainError("theta0 must lie in [0, pi]")
    if np.ndim(r):
        r = np.asarray(r, dtype=float)
    if np.any(np.asarray(r) < b0):
        raise ChartDomainError(f"r={r} below the throat radius b0={b0}")
    if np.any(np.asarray(r) - b0 < THROAT_COLLAR * b0):
        raise ThroatChartError(
            f"r within the throat collar of the r-chart pole at r={b0}"
        )
    # factored difference of squares keeps the denominator accurate near the throat
    g_rr = r * r / ((r - b0) * (r + b0))
    g_pp = math.sin(theta0) ** 2 * r * r
    return MetricSample.from_components(g_rr, g_pp)


@dataclass(frozen=True)
class EquivalenceAudit:
    """Pointwise comparison of the proper-length form dl^2 + (b0^2+l^2) dphi^2
    against the catenoid form r^2/(r^2-b0^2) dr^2 + r^2 dphi^2 under
    l = sqrt(r^2 - b0^2)."""

    b0: float
    r: np.ndarray
    dev_radial: np.ndarray
    dev_angular: np.ndarray
    max_rel_deviation: float


def equivalence_audit(b0: float, r_values) -> EquivalenceAudit:
    """Audit the algebraic equivalence of the two wormhole-section line elements.

    Route A pulls dl^2 + (b0^2 + l^2) dphi^2 back to the r coordinate through
    l(r) = sqrt((r-b0)(r+b0)) and the chain rule dl/dr = r/l; route B evaluates
    the catenoid components directly.  Both routes use the factored difference
    of squares, so the comparison stays meaningful arbitrarily close to the
    throat (compensated arithmetic, no extended precision types).
    """
    if not b0 > 0.0:
        raise ChartDomainError("b0 must be positive")
    r = np.asarray(r_values, dtype=float)
    if np.any(r <= b0):
        raise ChartDomainError("equivalence audit requires r > b0")

    lsq = (r - b0) * (r + b0)
    l = np.sqrt(lsq)
    # route A: chain rule (dl/dr)^2 and angular factor b0^2 + l^2
    g_rr_pullback = (r / l) ** 2
    ang_pullback = b0 * b0 + l * l
    # route B: the catenoid form
    g_rr_direct = r * r / lsq
    ang_direct = r * r

    dev_radial = np.abs(g_rr_pullback - g_rr_direct) / g_rr_direct
    dev_angular = np.abs(ang_pullback - ang_direct) / ang_direct
    return EquivalenceAudit(
        b0=b0,
        r=r,
        dev_radial=dev_radial,
        dev_angular=dev_angular,
        max_rel_deviation=float(max(dev_radial.max(), dev_angular.max())),
    )


def curvature(shape: CatenoidShape, zeta) -> CurvatureSample:
    """Principal curvatures kappa1 = -kappa2 = sech^2(zeta)/(aR), H = 0, K = kappa1*kappa2."""
    rho0 = shape.require_nondegenerate()
    zeta = np.asarray(zeta, dtype=float) if np.ndim(zeta) else float(zeta)
    k1 = (1.0 / np.cosh(zeta) ** 2) / rho0
    k2 = -k1
    return CurvatureSample(kappa1=k1, kappa2=k2, H=0.5 * (k1 + k2), K=k1 * k2)


def geometric_potential(shape: CatenoidShape, scales: PhysicalScales, zeta):
    """Curvature-induced potential -(hbar^2 / 2 m0 (aR)^2) sech^4(zeta).

    Evaluated both as -(hbar^2/2m0)(H^2 - K) and as
    -(hbar^2/8m0)(kappa1 - kappa2)^2; the two must agree to machine precision
    (they are the same invariant of the shape operator).
    """
    cs = curvature(shape, zeta)
    pref = scales.hbar**2 / (2.0 * scales.m0)
    v_hk = -pref * (cs.H**2 - cs.K)
    v_pc = -(pref / 4.0) * (cs.kappa1 - cs.kappa2) ** 2
    dev = np.max(np.abs(np.asarray(v_hk - v_pc)))
    scale = float(np.max(np.abs(np.asarray(v_hk)))) or 1.0
    if dev > 64.0 * np.finfo(float).eps * scale:  # pragma: no cover
        raise ConvergenceError(
            f"da Costa dual forms disagree by {dev:.3e}; implementation defect"
        )
    return v_hk
