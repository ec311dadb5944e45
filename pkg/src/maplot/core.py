"""MA statistics, significance classification, and the diverging color map.

All functions here are pure; the rest of the workbench (ingestion, selections,
rendering, HTTP) consumes them without re-implementing any of the math.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import AlphaOutOfRange, NonPositiveIntensity, PValueOutOfRange

# Decades of p-value below alpha over which the color ramp darkens linearly
# before saturating.
DEFAULT_SHADE_DEPTH = 8.0

# Stand-in for p == 0 when computing shade intensity only; classification is
# unaffected.
MIN_SHADING_P = 1e-300


class Classification(str, Enum):
    """Four-way significance call for one gene at a given alpha."""

    UP = "up"
    DOWN = "down"
    NOT_SIGNIFICANT = "not_significant"
    MISSING_P = "missing_p"


class ColorBase(str, Enum):
    RED = "red"
    BLUE = "blue"
    GREY = "grey"
    YELLOW = "yellow"


_CLASSIFICATION_COLOR = {
    Classification.UP: ColorBase.RED,
    Classification.DOWN: ColorBase.BLUE,
    Classification.NOT_SIGNIFICANT: ColorBase.GREY,
    Classification.MISSING_P: ColorBase.YELLOW,
}

# Concrete hue endpoints (lightest, darkest) per base color. The ramp choice is
# a presentation decision; grey and yellow do not darken.
COLOR_RAMPS: dict[ColorBase, tuple[tuple[int, int, int], tuple[int, int, int]]] = {
    ColorBase.RED: ((252, 165, 165), (127, 29, 29)),
    ColorBase.BLUE: ((147, 197, 253), (30, 58, 138)),
    ColorBase.GREY: ((156, 163, 175), (156, 163, 175)),
    ColorBase.YELLOW: ((250, 204, 21), (250, 204, 21)),
}


@dataclass(frozen=True)
class MAPoint:
    """One gene's plot coordinates: m is the log2 fold change, a the mean log2 expression."""

    m: float
    a: float


@dataclass(frozen=True)
class ShadedColor:
    """Base hue plus darkness in [0, 1]; grey and yellow always stay at 0."""

    base: ColorBase
    intensity: float

    def hex(self) -> str:
        light, dark = COLOR_RAMPS[self.base]
        t = self.intensity
        r, g, b = (round(lo + (hi - lo) * t) for lo, hi in zip(light, dark))
        return f"#{r:02x}{g:02x}{b:02x}"


def validate_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not (0.0 < alpha <= 1.0):
        raise AlphaOutOfRange(f"significance level must be in (0, 1], got {alpha}")
    return alpha


def validate_pvalue(p: float | None) -> float | None:
    """Accept a present p in [0, 1] or None for missing."""
    if p is None:
        return None
    p = float(p)
    if not (0.0 <= p <= 1.0):
        raise PValueOutOfRange(f"p-value must be in [0, 1], got {p}")
    return p


def compute_ma(r: float, g: float, pseudocount: float = 0.0) -> MAPoint:
    """Turn a pair of intensities (or read counts) into plot coordinates.

    m = log2(r/g) and a = 0.5 * log2(r*g), computed in the numerically
    equivalent sum/difference form. When a pseudocount is configured it is
    added to both intensities before the logs, which makes zero counts usable.
    """
    r_adj = float(r) + pseudocount
    g_adj = float(g) + pseudocount
    for label, value in (("r", r_adj), ("g", g_adj)):
        if not (math.isfinite(value) and value > 0.0):
            raise NonPositiveIntensity(
                f"intensity {label} must be positive and finite after pseudocount "
                f"adjustment, got {value}"
            )
    log_r = math.log2(r_adj)
    log_g = math.log2(g_adj)
    return MAPoint(m=log_r - log_g, a=0.5 * (log_r + log_g))


def classify(point: MAPoint, p: float | None, alpha: float) -> Classification:
    """Total four-way call: missing p wins, then direction of significant change.

    Ties at p == alpha and the directionless m == 0 case are NOT_SIGNIFICANT.
    """
    alpha = validate_alpha(alpha)
    if p is None:
        return Classification.MISSING_P
    if p < alpha:
        if point.m > 0.0:
            return Classification.UP
        if point.m < 0.0:
            return Classification.DOWN
    return Classification.NOT_SIGNIFICANT


def shade(
    classification: Classification,
    p: float | None,
    alpha: float,
    depth_decades: float = DEFAULT_SHADE_DEPTH,
) -> ShadedColor:
    """Map a call to its display color; more significant means darker red/blue.

    Intensity ramps linearly in log10(p) from 0 at p == alpha to 1 at
    ``depth_decades`` decades below alpha. Grey and yellow never darken.
    """
    if depth_decades <= 0.0:
        raise ValueError(f"depth_decades must be positive, got {depth_decades}")
    base = _CLASSIFICATION_COLOR[classification]
    if base in (ColorBase.GREY, ColorBase.YELLOW) or p is None:
        return ShadedColor(base, 0.0)
    alpha = validate_alpha(alpha)
    p_eff = max(float(p), MIN_SHADING_P)
    intensity = (math.log10(alpha) - math.log10(p_eff)) / depth_decades
    return ShadedColor(base, min(max(intensity, 0.0), 1.0))
