"""Channel taxonomy from the renormalized eta-chart potential.

The four observed behaviors of V_r - E across angular-momentum channels are
operationalized from the curve itself (the sign pattern near the origin, the
fitted large-eta fall-off power, and interior extrema):

* NEGATIVE_NEAR_ORIGIN_SLOW -- attractive at eta = 0, |V_r - E| falling off
  like (eta+1)^-p with p < 3 (the s-channel shows p ~ 2);
* NEGATIVE_NEAR_ORIGIN_FAST -- attractive at the origin with p >= 3
  (|m| = 1 shows p ~ 4: the 1/x^2 term cancels at eps = 2 m^2);
* POSITIVE_DEFINITE -- V_r - E > 0 everywhere on [0, eta_max];
* OUTER_WELL -- nonnegative at the origin but dipping negative at some
  eta > 0 (a well at a distance).

Classification depends on m only through m^2.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.optimize import brentq

from ..errors import ConfigurationError
from ..potentials import ChannelSpec, v_renormalized

FALLOFF_SLOW_FAST_BOUNDARY = 3.0


class ChannelCategory(Enum):
    NEGATIVE_NEAR_ORIGIN_SLOW = "negative_near_origin_slow"
    NEGATIVE_NEAR_ORIGIN_FAST = "negative_near_origin_fast"
    POSITIVE_DEFINITE = "positive_definite"
    OUTER_WELL = "outer_well"


@dataclass(frozen=True)
class ChannelClass:
    m: int
    eps: float
    category: ChannelCategory
    value_at_origin: float
    falloff_power: float
    extrema: tuple[tuple[float, float], ...]


def _falloff_power(channel: ChannelSpec, eta_max: float) -> float:
    """Fitted power p of |V_r - E| ~ (eta+1)^-p over the last decade."""
    eta = np.geomspace(eta_max / 10.0, eta_max, 200)
    vals = np.abs(v_renormalized(channel, eta))
    vals = np.maximum(vals, 1e-300)
    slope = np.polyfit(np.log(eta + 1.0), np.log(vals), 1)[0]
    return float(-slope)


def _interior_extrema(channel: ChannelSpec, eta_max: float, samples: int) -> tuple[tuple[float, float], ...]:
    """Interior extrema of V_r - E, refined to 1e-8 in coordinate via the
    sign changes of a central-difference derivative."""
    eta = np.linspace(0.0, eta_max, samples)
    delta = 1e-6

    def slope(e: float) -> float:
        return float(
            v_renormalized(channel, np.array([e + delta]))[0]
            - v_renormalized(channel, np.array([e - delta]))[0]
        )

    vals = v_renormalized(channel, eta)
    dv = np.diff(vals)
    found = []
    for i in np.nonzero(dv[:-1] * dv[1:] < 0.0)[0]:
        lo, hi = eta[i], eta[i + 2]
        if lo <= delta:
            continue
        root = brentq(slope, lo, hi, xtol=1e-10)
        value = float(v_renormalized(channel, np.array([root]))[0])
        found.append((float(root), value))
    return tuple(found)


def classify_channels(
    eps: float,
    m_list,
    eta_max: float = 100.0,
    samples: int = 4001,
) -> list[ChannelClass]:
    """Classify each channel from its renormalized potential on [0, eta_max]."""
    if not eta_max >= 50.0:
        raise ConfigurationError("classification requires eta_max >= 50")
    out = []
    for m in m_list:
        channel = ChannelSpec(m=int(m), eps=eps)
        eta = np.linspace(0.0, eta_max, samples)
        vals = v_renormalized(channel, eta)
        v0 = float(vals[0])
        power = _falloff_power(channel, eta_max)
        extrema = _interior_extrema(channel, eta_max, samples)
        vmin = float(np.min(vals))
        if v0 < 0.0:
            if power < FALLOFF_SLOW_FAST_BOUNDARY:
                category = ChannelCategory.NEGATIVE_NEAR_ORIGIN_SLOW
            else:
                category = ChannelCategory.NEGATIVE_NEAR_ORIGIN_FAST
        elif vmin < 0.0:
            category = ChannelCategory.OUTER_WELL
        else:
            category = ChannelCategory.POSITIVE_DEFINITE
        out.append(
            ChannelClass(
                m=int(m), eps=eps, category=category, value_at_origin=v0,
                falloff_power=power, extrema=extrema,
            )
        )
    return out
