"""Numerical machinery: Numerov integration, shooting and matrix bound states,
plane-wave scattering in the arc chart, residual evaluation, and the
cross-chart eigenvalue check.

Bound states solve the weighted reading of the zeta-chart equation,

    -Phi'' + (m^2 - sech^2 zeta) Phi = eps cosh^2(zeta) Phi,

a generalized Sturm-Liouville problem whose weight cosh^2(zeta) is the surface
area element.  Two independent routes are provided: even/odd parity shooting
from the throat matched against a WKB-decaying tail (Numerov, O(h^4)), and a
second-order finite-difference generalized eigensolve with Richardson
extrapolation of the eigenvalues.

The shooting match is evaluated at the outer classical turning point with the
tail integrated inward from where the WKB action beyond the turning point
reaches ACTION_CAP.  Beyond that point the tail is below e^-ACTION_CAP of the
peak and, more importantly, h^2 f / 12 grows past O(1) (f ~ |eps| cosh^2
reaches ~1e9 at zeta = 12) where the Numerov recurrence is invalid.

Scattering integrates -chi'' + W(u) chi = eps chi across the arc chart with a
transmitted plane wave seeded at +u_max and the incident/reflected amplitudes
read off at -u_max; the defect | |r|^2 + |t|^2 - 1 | is tracked on every
result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.linalg import eigh_tridiagonal

from .errors import ConfigurationError, ConvergenceError
from .potentials import ChannelSpec, eta_bracket, v_scatter, v_zeta, weighted_problem_terms

DEFAULT_ZETA_MAX = 12.0
DEFAULT_SAMPLES = 4001
ACTION_CAP = 60.0
RENORM_LIMIT = 1e250


class Parity(Enum):
    EVEN = "even"
    ODD = "odd"
    NONE = "none"


class NormConvention(Enum):
    WEIGHTED_COSH2 = "weighted_cosh2"
    FLAT_U = "flat_u"
    NONE = "none"


class Method(Enum):
    SHOOTING = "shooting"
    MATRIX = "matrix"


@dataclass(frozen=True)
class Grid1D:
    lo: float
    hi: float
    n: int

    def __post_init__(self) -> None:
        if self.n < 16:
            raise ConfigurationError("grids need at least 16 samples")
        if not self.hi > self.lo:
            raise ConfigurationError("grid requires hi > lo")

    @property
    def h(self) -> float:
        return (self.hi - self.lo) / (self.n - 1)

    def points(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.n)

    def is_symmetric(self) -> bool:
        return abs(self.lo + self.hi) < 1e-12 * (self.hi - self.lo) and self.n % 2 == 1


@dataclass
class WaveFunction:
    grid: Grid1D
    values: np.ndarray
    derivs: np.ndarray
    parity: Parity = Parity.NONE
    norm_convention: NormConvention = NormConvention.NONE


@dataclass
class BoundState:
    channel: ChannelSpec
    nodes: int
    wave: WaveFunction
    method: Method


@dataclass
class ScatteringResult:
    channel: ChannelSpec
    k: float
    r_amp: complex
    t_amp: complex
    unitarity_defect: float

    @property
    def transmission_probability(self) -> float:
        return abs(self.t_amp) ** 2

    @property
    def reflection_probability(self) -> float:
        return abs(self.r_amp) ** 2


# ---------------------------------------------------------------------------
# Numerov integration
# ---------------------------------------------------------------------------

def _taylor_step(y: float, dy: float, f0: float, df: float, ddf: float, s: float) -> float:
    """Fifth-order Taylor value y(x0 + s) for y'' = f y from (y, y') at x0."""
    d2 = f0 * y
    d3 = df * y + f0 * dy
    d4 = ddf * y + 2.0 * df * dy + f0 * f0 * y
    return y + s * dy + 0.5 * s * s * d2 + s**3 / 6.0 * d3 + s**4 / 24.0 * d4


def _one_sided_df(f: np.ndarray, h: float, at_start: bool) -> tuple[float, float]:
    """(f', f'') at an endpoint from three one-sided samples."""
    if at_start:
        df = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h)
        ddf = (f[0] - 2.0 * f[1] + f[2]) / h**2
    else:
        df = (3.0 * f[-1] - 4.0 * f[-2] + f[-3]) / (2.0 * h)
        ddf = (f[-1] - 2.0 * f[-2] + f[-3]) / h**2
    return df, ddf


def _numerov_sweep(f: np.ndarray, h: float, y0: float, y1: float, renorm: bool) -> np.ndarray:
    """March y'' = f y from the first two values.

    Uses the summed-difference form of the Numerov recurrence,
    w = (1 - h^2 f/12) y with increments s_n = s_{n-1} + h^2 f_n y_n, which
    avoids the 2w - w cancellation of the grouped form (that form loses five
    orders of magnitude to rounding at h = 1e-3).  With renorm=True the whole
    history is rescaled when the magnitude passes RENORM_LIMIT; shooting only
    cares about ratios near the match point.
    """
    n = len(f)
    fl = f.tolist()
    h2 = h * h
    y = np.empty(n)
    y[0], y[1] = y0, y1
    w_prev = (1.0 - h2 * fl[0] / 12.0) * y0
    w = (1.0 - h2 * fl[1] / 12.0) * y1
    s = w - w_prev
    for i in range(1, n - 1):
        s += h2 * fl[i] * y[i]
        w += s
        y_next = w / (1.0 - h2 * fl[i + 1] / 12.0)
        y[i + 1] = y_next
        if renorm and abs(y_next) > RENORM_LIMIT:
            y[: i + 2] /= RENORM_LIMIT
            w /= RENORM_LIMIT
            s /= RENORM_LIMIT
    return y


def fd_derivative(values: np.ndarray, h: float) -> np.ndarray:
    """First derivative, five-point stencils (O(h^4)) including the edges."""
    y = np.asarray(values, dtype=float)
    d = np.empty_like(y)
    d[2:-2] = (y[:-4] - 8.0 * y[1:-3] + 8.0 * y[3:-1] - y[4:]) / (12.0 * h)
    d[0] = (-25.0 * y[0] + 48.0 * y[1] - 36.0 * y[2] + 16.0 * y[3] - 3.0 * y[4]) / (12.0 * h)
    d[1] = (-3.0 * y[0] - 10.0 * y[1] + 18.0 * y[2] - 6.0 * y[3] + y[4]) / (12.0 * h)
    d[-1] = (25.0 * y[-1] - 48.0 * y[-2] + 36.0 * y[-3] - 16.0 * y[-4] + 3.0 * y[-5]) / (12.0 * h)
    d[-2] = (3.0 * y[-1] + 10.0 * y[-2] - 18.0 * y[-3] + 6.0 * y[-4] - y[-5]) / (12.0 * h)
    return d


def fd_second_derivative_interior(values: np.ndarray, h: float) -> np.ndarray:
    """Second derivative on the interior i in [2, n-3], five-point (O(h^4))."""
    y = np.asarray(values, dtype=float)
    return (-y[:-4] + 16.0 * y[1:-3] - 30.0 * y[2:-2] + 16.0 * y[3:-1] - y[4:]) / (12.0 * h**2)


def numerov_integrate(
    coeff: Callable[[np.ndarray], np.ndarray],
    grid: Grid1D,
    y_start: float,
    dy_start: float,
    direction: str = "forward",
) -> WaveFunction:
    """Integrate y'' = coeff(x) y across the grid from (value, derivative)
    initial data at one end.  Fourth-order accurate globally.

    direction "forward" starts at grid.lo, "backward" at grid.hi.
    Non-finite coefficient samples abort with the offending position.
    """
    x = grid.points()
    f = np.asarray(coeff(x), dtype=float)
    if not np.all(np.isfinite(f)):
        bad = int(np.argmax(~np.isfinite(f)))
        raise ConvergenceError(f"non-finite equation coefficient at x={x[bad]:.6g}")
    h = grid.h
    if direction == "forward":
        df, ddf = _one_sided_df(f, h, at_start=True)
        y1 = _taylor_step(y_start, dy_start, f[0], df, ddf, h)
        values = _numerov_sweep(f, h, y_start, y1, renorm=False)
    elif direction == "backward":
        df, ddf = _one_sided_df(f, h, at_start=False)
        y1 = _taylor_step(y_start, dy_start, f[-1], df, ddf, -h)
        values = _numerov_sweep(f[::-1], h, y_start, y1, renorm=False)[::-1]
    else:
        raise ValueError("direction must be 'forward' or 'backward'")
    return WaveFunction(grid=grid, values=values, derivs=fd_derivative(values, h))


# ---------------------------------------------------------------------------
# Two-sided shooting on a half line
# ---------------------------------------------------------------------------

@dataclass
class _HalfShot:
    """Pieces of a two-sided shot needed for the determinant and reconstruction."""

    determinant: float
    i_match: int
    i_start_inward: int
    outward: np.ndarray     # values on [0 .. i_match+1]
    inward: np.ndarray      # values on [i_match-1 .. i_start_inward]


def _half_line_shot(f: np.ndarray, h: float, y0: float, dy0: float,
                    action_cap: float = ACTION_CAP) -> _HalfShot:
    """Shoot outward from the left edge and inward from the WKB tail; return
    the normalized Wronskian at the outer turning point.

    f is the equation coefficient q - eps*w sampled on the half-line grid; the
    rightmost sample must be classically forbidden (f > 0).
    """
    n = len(f)
    if f[-1] <= 0.0:
        raise ConfigurationError(
            "domain too small: the outer edge is not classically forbidden "
            "(increase zeta_max)"
        )
    negative = np.nonzero(f < 0.0)[0]
    i_match = int(negative[-1]) + 1 if negative.size else max(2, n // 16)
    i_match = min(i_match, n - 4)

    # inward start: cap the WKB action accumulated beyond the turning point
    sq = np.sqrt(np.maximum(f, 0.0))
    action = np.concatenate([[0.0], np.cumsum(0.5 * (sq[1:] + sq[:-1]) * h)])
    action -= action[i_match]
    over = np.nonzero(action > action_cap)[0]
    i_start = int(over[0]) if over.size else n - 1
    i_start = max(i_start, i_match + 3)

    df0, ddf0 = _one_sided_df(f[: i_match + 2], h, at_start=True)
    y1 = _taylor_step(y0, dy0, f[0], df0, ddf0, h)
    outward = _numerov_sweep(f[: i_match + 2], h, y0, y1, renorm=True)

    fs = f[i_start]
    dfN, ddfN = _one_sided_df(f[: i_start + 1], h, at_start=False)
    yN = 1.0
    dyN = -math.sqrt(fs) * yN  # WKB decay Phi'/Phi = -sqrt(f)
    yN1 = _taylor_step(yN, dyN, fs, dfN, ddfN, -h)
    inward = _numerov_sweep(f[i_match - 1 : i_start + 1][::-1], h, yN, yN1, renorm=True)[::-1]

    dy_out = (outward[i_match + 1] - outward[i_match - 1]) / (2.0 * h)
    dy_in = (inward[2] - inward[0]) / (2.0 * h)
    norm_out = math.hypot(outward[i_match], dy_out)
    norm_in = math.hypot(inward[1], dy_in)
    det = (dy_out * inward[1] - dy_in * outward[i_match]) / (norm_out * norm_in)
    return _HalfShot(det, i_match, i_start, outward, inward)


def _parity_initial_conditions(parity: Parity) -> tuple[float, float]:
    if parity is Parity.EVEN:
        return 1.0, 0.0
    if parity is Parity.ODD:
        return 0.0, 1.0
    raise ValueError("shooting requires a definite parity")


def _scan_and_bisect(det: Callable[[float], float], window: tuple[float, float],
                     scan_points: int, tol: float) -> list[float]:
    """Locate determinant sign changes on a uniform scan and bisect each to tol.

    Returns roots in ascending order; duplicates within 1e-12 are merged.  No
    sign change in the window yields an empty list.
    """
    lo, hi = window
    eps_grid = np.linspace(lo, hi, scan_points)
    dets = [det(e) for e in eps_grid]
    roots: list[float] = []
    for i in range(scan_points - 1):
        da, db = dets[i], dets[i + 1]
        if da == 0.0:
            roots.append(float(eps_grid[i]))
            continue
        if da * db < 0.0:
            a, b, fa = float(eps_grid[i]), float(eps_grid[i + 1]), da
            while b - a > tol:
                mid = 0.5 * (a + b)
                fm = det(mid)
                if fa * fm <= 0.0:
                    b = mid
                else:
                    a, fa = mid, fm
            roots.append(0.5 * (a + b))
    merged: list[float] = []
    for r in roots:
        if not merged or r - merged[-1] > 1e-12:
            merged.append(r)
    return merged


def _count_nodes(values: np.ndarray) -> int:
    y = np.asarray(values)
    floor = 1e-9 * np.max(np.abs(y))
    sig = y[np.abs(y) > floor]
    return int(np.sum(sig[:-1] * sig[1:] < 0.0))


def _glue_half_wave(shot: _HalfShot, n_half: int) -> np.ndarray:
    """Assemble the half-line wavefunction from the two shot pieces."""
    im = shot.i_match
    out, inw = shot.outward, shot.inward
    dy_out = out[im + 1] - out[im - 1]
    dy_in = inw[2] - inw[0]
    denom = inw[1] ** 2 + dy_in**2
    scale = (out[im] * inw[1] + dy_out * dy_in) / denom
    half = np.zeros(n_half)
    half[: im + 1] = out[: im + 1]
    half[im : shot.i_start_inward + 1] = scale * inw[1:]
    return half


def sturm_liouville_states(
    q: Callable[[np.ndarray], np.ndarray],
    w: Callable[[np.ndarray], np.ndarray],
    eps_window: tuple[float, float],
    grid: Grid1D,
    tol: float = 1e-10,
    scan_points: int = 120,
    norm_convention: NormConvention = NormConvention.NONE,
) -> list[tuple[float, Parity, int, WaveFunction]]:
    """Shooting eigensolve of -Phi'' + q Phi = eps w Phi on a symmetric grid.

    Both parities are shot from the origin and matched against WKB-decaying
    tails; returns (eps, parity, full-line node count, normalized wave) tuples
    sorted by eps.
    """
    if not grid.is_symmetric():
        raise ConfigurationError("bound-state grids must be symmetric about 0 with odd n")
    n_half = (grid.n + 1) // 2
    z_half = np.linspace(0.0, grid.hi, n_half)
    h = z_half[1] - z_half[0]
    qv = np.asarray(q(z_half), dtype=float)
    wv = np.asarray(w(z_half), dtype=float)

    def f_of(eps: float) -> np.ndarray:
        return qv - eps * wv

    for edge in eps_window:
        if f_of(edge)[-1] <= 0.0:
            raise ConfigurationError(
                f"zeta_max={grid.hi} too small: tail not classically forbidden at eps={edge}"
            )

    found: list[tuple[float, Parity, int, WaveFunction]] = []
    for parity in (Parity.EVEN, Parity.ODD):
        y0, dy0 = _parity_initial_conditions(parity)

        def det(eps: float) -> float:
            return _half_line_shot(f_of(eps), h, y0, dy0).determinant

        for eps in _scan_and_bisect(det, eps_window, scan_points, tol):
            shot = _half_line_shot(f_of(eps), h, y0, dy0)
            half = _glue_half_wave(shot, n_half)
            sign = -1.0 if parity is Parity.ODD else 1.0
            values = np.concatenate([sign * half[::-1][:-1], half])
            z_full = grid.points()
            norm = math.sqrt(np.trapezoid(values**2 * w(z_full), z_full))
            values /= norm
            wave = WaveFunction(
                grid=grid,
                values=values,
                derivs=fd_derivative(values, h),
                parity=parity,
                norm_convention=norm_convention,
            )
            half_nodes = _count_nodes(half)
            nodes = 2 * half_nodes + (1 if parity is Parity.ODD else 0)
            found.append((eps, parity, nodes, wave))
    found.sort(key=lambda item: item[0])
    return found


def matrix_states(
    q: Callable[[np.ndarray], np.ndarray],
    w: Callable[[np.ndarray], np.ndarray],
    eps_window: tuple[float, float],
    grid: Grid1D,
    richardson: bool = True,
    norm_convention: NormConvention = NormConvention.NONE,
) -> list[tuple[float, Parity, int, WaveFunction]]:
    """Finite-difference generalized eigensolve of -Phi'' + q Phi = eps w Phi.

    The tridiagonal operator is symmetrized with the diagonal weight
    (W^-1/2 A W^-1/2) and solved with LAPACK.  Eigenvalues carry O(h^2) error;
    with richardson=True a second solve at twice the resolution removes the
    leading term.  Eigenvectors are reported on the requested grid.
    """
    if not grid.is_symmetric():
        raise ConfigurationError("bound-state grids must be symmetric about 0 with odd n")

    def solve(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        z = np.linspace(grid.lo, grid.hi, n)
        h = z[1] - z[0]
        qi = np.asarray(q(z), dtype=float)[1:-1]
        wi = np.asarray(w(z), dtype=float)[1:-1]
        diag = (2.0 / h**2 + qi) / wi
        off = (-1.0 / h**2) / np.sqrt(wi[:-1] * wi[1:])
        vals, vecs = eigh_tridiagonal(diag, off, select="v", select_range=eps_window)
        return z, vals, vecs

    z, vals, vecs = solve(grid.n)
    if richardson and vals.size:
        _, vals_fine, _ = solve(2 * grid.n - 1)
        npair = min(vals.size, vals_fine.size)
        vals = (4.0 * vals_fine[:npair] - vals[:npair]) / 3.0
        vecs = vecs[:, :npair]

    out: list[tuple[float, Parity, int, WaveFunction]] = []
    wz = np.asarray(w(z), dtype=float)
    h = z[1] - z[0]
    for j in range(vals.size):
        psi = vecs[:, j]
        values = np.zeros(grid.n)
        values[1:-1] = psi / np.sqrt(wz[1:-1])
        even_defect = np.linalg.norm(values - values[::-1])
        odd_defect = np.linalg.norm(values + values[::-1])
        scale = np.linalg.norm(values)
        if even_defect < 1e-6 * scale:
            parity = Parity.EVEN
        elif odd_defect < 1e-6 * scale:
            parity = Parity.ODD
        else:
            parity = Parity.NONE
        mid = grid.n // 2
        anchor = values[mid] if parity is Parity.EVEN else values[mid + 1]
        if anchor < 0.0:
            values = -values
        norm = math.sqrt(np.trapezoid(values**2 * wz, z))
        values /= norm
        wave = WaveFunction(
            grid=grid,
            values=values,
            derivs=fd_derivative(values, h),
            parity=parity,
            norm_convention=norm_convention,
        )
        out.append((float(vals[j]), parity, _count_nodes(values), wave))
    out.sort(key=lambda item: item[0])
    return out


def bound_states(
    m: int,
    eps_window: tuple[float, float],
    grid: Grid1D | None = None,
    method: Method = Method.SHOOTING,
    tol: float = 1e-10,
    scan_points: int = 120,
) -> list[BoundState]:
    """Bound states of the catenoid channel m inside a negative eps window.

    The weighted problem -Phi'' + (m^2 - sech^2) Phi = eps cosh^2 Phi is
    solved by parity shooting (default) or the finite-difference matrix route;
    states come back sorted by eps with full-line node counts.  An empty list
    means no matching-determinant sign change in the window.
    """
    lo, hi = eps_window
    if not (lo < hi < 0.0):
        raise ConfigurationError("eps window must satisfy lo < hi < 0")
    if grid is None:
        grid = Grid1D(-DEFAULT_ZETA_MAX, DEFAULT_ZETA_MAX, DEFAULT_SAMPLES)
    q, w = weighted_problem_terms(m)
    if method is Method.SHOOTING:
        states = sturm_liouville_states(
            q, w, eps_window, grid, tol=tol, scan_points=scan_points,
            norm_convention=NormConvention.WEIGHTED_COSH2,
        )
    elif method is Method.MATRIX:
        states = matrix_states(
            q, w, eps_window, grid, norm_convention=NormConvention.WEIGHTED_COSH2
        )
    else:
        raise ValueError(f"unknown method {method}")
    return [
        BoundState(channel=ChannelSpec(m=m, eps=eps), nodes=nodes, wave=wave, method=method)
        for eps, parity, nodes, wave in states
    ]


# ---------------------------------------------------------------------------
# Scattering
# ---------------------------------------------------------------------------

def default_u_max(eps: float) -> float:
    return max(40.0, 20.0 / math.sqrt(eps))


def transmission(
    m: int,
    eps: float,
    u_max: float | None = None,
    samples: int | None = None,
    potential: Callable[[np.ndarray], np.ndarray] | None = None,
    phase_correction: bool = False,
    defect_limit: float = 1e-4,
) -> ScatteringResult:
    """Transmission and reflection amplitudes for -chi'' + W chi = eps chi.

    A unit-amplitude transmitted plane wave is seeded at +u_max and the
    equation is integrated backward; the incident and reflected amplitudes are
    read off the two leftmost samples.  By default the matching waves are pure
    plane waves exp(+/- i k u); phase_correction=True matches against the
    local momentum sqrt(eps - W(edge)) instead, which tightens the m = 0
    channel where the -1/(4 u^2) tail converges slowly.

    potential overrides W(u) (used to validate against the Poschl-Teller
    reference); defaults to the catenoid arc-chart potential for channel m.
    """
    if not eps > 0.0:
        raise ConfigurationError("scattering requires eps > 0")
    if u_max is None:
        u_max = default_u_max(eps)
    if samples is None:
        samples = 2 * int(round(u_max / 0.01)) + 1
    if potential is None:
        pot = lambda u: v_scatter(m, u)  # noqa: E731
    else:
        pot = potential

    u = np.linspace(-u_max, u_max, samples)
    h = u[1] - u[0]
    f = np.asarray(pot(u), dtype=float) - eps
    if not np.all(np.isfinite(f)):
        bad = int(np.argmax(~np.isfinite(f)))
        raise ConvergenceError(f"non-finite scattering potential at u={u[bad]:.6g}")

    k = math.sqrt(eps)
    if phase_correction:
        # match against the local momentum sqrt(eps - W(edge)); f = W - eps
        if f[0] >= 0.0 or f[-1] >= 0.0:
            raise ConfigurationError("edges are classically closed; enlarge u_max")
        k_left = math.sqrt(-f[0])
        k_right = math.sqrt(-f[-1])
    else:
        k_right = k_left = k

    fl = f.tolist()
    h2 = h * h
    n = samples
    chi = [0j] * n
    chi[-1] = complex(math.cos(k_right * u[-1]), math.sin(k_right * u[-1]))
    chi[-2] = complex(math.cos(k_right * u[-2]), math.sin(k_right * u[-2]))
    # summed-difference Numerov marching right to left (see _numerov_sweep)
    w_prev = (1.0 - h2 * fl[-1] / 12.0) * chi[-1]
    w = (1.0 - h2 * fl[-2] / 12.0) * chi[-2]
    s = w - w_prev
    for i in range(n - 2, 0, -1):
        s += h2 * fl[i] * chi[i]
        w += s
        chi[i - 1] = w / (1.0 - h2 * fl[i - 1] / 12.0)

    e0p = complex(math.cos(k_left * u[0]), math.sin(k_left * u[0]))
    e1p = complex(math.cos(k_left * u[1]), math.sin(k_left * u[1]))
    e0m = e0p.conjugate()
    e1m = e1p.conjugate()
    det = e0p * e1m - e0m * e1p
    a_inc = (chi[0] * e1m - chi[1] * e0m) / det
    b_ref = (chi[1] * e0p - chi[0] * e1p) / det

    t_amp = 1.0 / a_inc
    r_amp = b_ref / a_inc
    defect = abs(abs(r_amp) ** 2 + abs(t_amp) ** 2 - 1.0)
    if not math.isfinite(defect) or defect > defect_limit:
        raise ConvergenceError(
            f"unitarity defect {defect:.3e} exceeds {defect_limit:.1e}; refine the "
            f"grid (samples={samples}) or enlarge u_max={u_max}"
        )
    return ScatteringResult(
        channel=ChannelSpec(m=m, eps=eps),
        k=k,
        r_amp=complex(r_amp),
        t_amp=complex(t_amp),
        unitarity_defect=float(defect),
    )


# ---------------------------------------------------------------------------
# Residuals and the cross-chart check
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ResidualReport:
    grid: np.ndarray
    curve: np.ndarray
    max_norm: float
    weighted_l2: float


def residual(wave: WaveFunction, channel: ChannelSpec, chart: str = "zeta") -> ResidualReport:
    """Pointwise equation residual of a candidate solution via 5-point stencils.

    chart "zeta": -Phi'' + V(zeta) Phi with the full coefficient of the
    zeta-chart equation; chart "arc": -chi'' + (W - eps) chi.  Returns the
    interior curve with its max norm and the area-weighted L2 norm.
    """
    x = wave.grid.points()
    h = wave.grid.h
    d2 = fd_second_derivative_interior(wave.values, h)
    xi = x[2:-2]
    yi = wave.values[2:-2]
    if chart == "zeta":
        curve = -d2 + v_zeta(channel, xi) * yi
        weight = np.cosh(xi) ** 2
    elif chart == "arc":
        curve = -d2 + (v_scatter(channel.m, xi) - channel.eps) * yi
        weight = np.ones_like(xi)
    else:
        raise ValueError(f"residual chart must be 'zeta' or 'arc', not {chart!r}")
    l2 = math.sqrt(np.trapezoid(curve**2 * weight, xi))
    return ResidualReport(grid=xi, curve=curve, max_norm=float(np.max(np.abs(curve))), weighted_l2=l2)


@dataclass(frozen=True)
class CrossChartReport:
    eps_zeta: float
    eps_eta: float
    difference: float
    eta_residual_max: float
    flagged: bool


def _eta_chart_coefficient(m: int, eps: float, eta: np.ndarray) -> np.ndarray:
    """Coefficient of g'' = f g after the amplitude substitution Phi = x^-1/2 g
    removes the first-derivative term of the eta-chart equation."""
    x = eta + 1.0
    return -(eta_bracket(ChannelSpec(m=m, eps=eps), eta) + 0.25 / (x * x))


def _eta_initial_conditions(parity: Parity) -> tuple[float, float]:
    # Phi = x^-1/2 g: at x=1, Phi' (in eta) = g' - g/2, so even parity
    # (Phi'=0) gives g'(0) = g(0)/2 and odd parity keeps g(0) = 0.
    if parity is Parity.EVEN:
        return 1.0, 0.5
    if parity is Parity.ODD:
        return 0.0, 1.0
    raise ValueError("cross-chart check requires a definite parity")


def solve_eta_chart_eps(
    m: int,
    parity: Parity,
    eps_bracket: tuple[float, float],
    eta_max: float = 80.0,
    samples: int = 8001,
    tol: float = 1e-12,
) -> float | None:
    """Locate an eigenvalue of the eta-chart equation on [0, eta_max] by the
    same two-sided shot used in the zeta chart.  Returns None if the bracket
    contains no determinant sign change."""
    eta = np.linspace(0.0, eta_max, samples)
    h = eta[1] - eta[0]
    y0, dy0 = _eta_initial_conditions(parity)

    def det(eps: float) -> float:
        return _half_line_shot(_eta_chart_coefficient(m, eps, eta), h, y0, dy0).determinant

    roots = _scan_and_bisect(det, eps_bracket, 16, tol)
    return roots[0] if roots else None


def cross_chart_check(
    bound: BoundState,
    eta_max: float = 80.0,
    samples: int = 8001,
    flag_tolerance: float = 1e-4,
) -> CrossChartReport:
    """Re-solve a converged zeta-chart bound state in the eta chart and
    evaluate the eta-chart equation residual of the mapped state.

    Disagreement beyond flag_tolerance flags the report rather than raising.
    """
    eps_z = bound.channel.eps
    m = bound.channel.m
    spread = max(1e-4, 0.05 * abs(eps_z))
    eps_eta = solve_eta_chart_eps(
        m, bound.wave.parity, (eps_z - spread, min(eps_z + spread, -1e-14)),
        eta_max=eta_max, samples=samples,
    )

    # map the state to a uniform eta grid and measure the Eq-in-eta residual
    z = bound.wave.grid.points()
    half = slice(len(z) // 2, None)
    zh, yh = z[half], bound.wave.values[half]
    peak = np.max(np.abs(yh))
    live = np.nonzero(np.abs(yh) > 1e-8 * peak)[0]
    z_cut = zh[live[-1]] if live.size else zh[-1]
    eta_cut = min(eta_max, math.expm1(z_cut))
    spline = CubicSpline(zh, yh)
    eta = np.linspace(0.0, eta_cut, 4001)
    he = eta[1] - eta[0]
    phi = spline(np.log1p(eta))
    x = eta + 1.0
    d2 = fd_second_derivative_interior(phi, he)
    d1 = fd_derivative(phi, he)[2:-2]
    bracket = eta_bracket(ChannelSpec(m=m, eps=eps_z), eta[2:-2])
    res = d2 + d1 / x[2:-2] + bracket * phi[2:-2]
    scale = np.max(np.abs(bracket * phi[2:-2])) or 1.0
    res_max = float(np.max(np.abs(res)) / scale)

    if eps_eta is None:
        return CrossChartReport(eps_z, math.nan, math.inf, res_max, flagged=True)
    diff = abs(eps_z - eps_eta)
    return CrossChartReport(eps_z, eps_eta, diff, res_max, flagged=diff > flag_tolerance)


def lowest_flat_eigenvalue(m: int, abs_eps: float, zeta_max: float = DEFAULT_ZETA_MAX,
                           n: int = 2001) -> float:
    """Lowest eigenvalue mu0 of the flat-weight operator
    -d^2/dzeta^2 + (m^2 - sech^2 + |eps| cosh^2); nondecreasing in |eps|."""
    z = np.linspace(-zeta_max, zeta_max, n)
    h = z[1] - z[0]
    v = m * m - 1.0 / np.cosh(z) ** 2 + abs_eps * np.cosh(z) ** 2
    diag = 2.0 / h**2 + v[1:-1]
    off = np.full(n - 3, -1.0 / h**2)
    vals = eigh_tridiagonal(diag, off, select="i", select_range=(0, 0), eigvals_only=True)
    return float(vals[0])
