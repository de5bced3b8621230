"""Hue-chroma-luminance palette generation for split conditions.

Each source feature receives its own hue; the binarized ranges of one
feature share that hue and fan out over a fixed luminance ramp, so
related conditions read as shades of one color.  Conversion goes through
polar CIELUV with a D65 white point and clamps out-of-gamut channels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .dataset import SplitCondition

CHROMA = 60.0
LUMINANCE_RANGE = (45.0, 85.0)
LEAF_GRAY = (170, 170, 170)

# D65 reference white, 2-degree observer
_WHITE = (0.95047, 1.0, 1.08883)
_KAPPA = 24389.0 / 27.0
_U_PRIME_N = 4.0 * _WHITE[0] / (_WHITE[0] + 15.0 * _WHITE[1] + 3.0 * _WHITE[2])
_V_PRIME_N = 9.0 * _WHITE[1] / (_WHITE[0] + 15.0 * _WHITE[1] + 3.0 * _WHITE[2])

# XYZ -> linear sRGB (IEC 61966-2-1)
_XYZ_TO_RGB = (
    (3.2404542, -1.5371385, -0.4985314),
    (-0.9692660, 1.8760108, 0.0415560),
    (0.0556434, -0.2040259, 1.0572252),
)


def _gamma(channel: float) -> float:
    if channel <= 0.0031308:
        return 12.92 * channel
    return 1.055 * channel ** (1.0 / 2.4) - 0.055


def hcl_to_rgb(h: float, c: float, l: float) -> tuple[int, int, int]:
    """Convert an HCL triple (hue degrees, chroma, luminance) to 8-bit RGB."""
    if l <= 0.0:
        return (0, 0, 0)
    hue = math.radians(h)
    u = c * math.cos(hue)
    v = c * math.sin(hue)
    y = _WHITE[1] * (((l + 16.0) / 116.0) ** 3 if l > 8.0 else l / _KAPPA)
    u_prime = u / (13.0 * l) + _U_PRIME_N
    v_prime = v / (13.0 * l) + _V_PRIME_N
    if v_prime <= 0.0:
        x = z = 0.0
    else:
        x = y * 9.0 * u_prime / (4.0 * v_prime)
        z = y * (12.0 - 3.0 * u_prime - 20.0 * v_prime) / (4.0 * v_prime)
    rgb = []
    for row in _XYZ_TO_RGB:
        linear = row[0] * x + row[1] * y + row[2] * z
        value = _gamma(max(0.0, linear))
        rgb.append(int(min(1.0, max(0.0, value)) * 255.0 + 0.5))
    return (rgb[0], rgb[1], rgb[2])


def rgb_hex(rgb: tuple[int, int, int]) -> str:
    return "#%02x%02x%02x" % rgb


@dataclass(frozen=True)
class ColorMap:
    """Resolved palette: hue per source feature, luminance per condition."""

    feature_hues: dict[str, float]
    feature_index: dict[str, int]
    condition_luminance: dict[int, float]
    luminance_rank: dict[int, int]
    condition_rgb: dict[int, tuple[int, int, int]]
    chroma: float = CHROMA
    leaf_gray: tuple[int, int, int] = LEAF_GRAY

    def provenance(self, condition_id: int, conditions: Sequence[SplitCondition]) -> tuple[int, int]:
        feature = conditions[condition_id].source_feature
        return self.feature_index[feature], self.luminance_rank[condition_id]


def assign_colors(conditions: Sequence[SplitCondition]) -> ColorMap:
    """Deterministic palette: evenly spaced hues, per-group luminance ramp.

    Source features in first-appearance order get hues ``360 * i / G``.
    Within one feature, conditions sorted by range label climb the
    luminance ramp; a lone condition sits at the ramp midpoint.
    """
    feature_index: dict[str, int] = {}
    for cond in conditions:
        feature_index.setdefault(cond.source_feature, len(feature_index))
    group_count = len(feature_index)
    feature_hues = {feat: 360.0 * i / group_count for feat, i in feature_index.items()} if group_count else {}
    lum_lo, lum_hi = LUMINANCE_RANGE
    condition_luminance: dict[int, float] = {}
    luminance_rank: dict[int, int] = {}
    by_feature: dict[str, list[SplitCondition]] = {}
    for cond in conditions:
        by_feature.setdefault(cond.source_feature, []).append(cond)
    for feat, group in by_feature.items():
        ranked = sorted(group, key=lambda c: c.range_label)
        k = len(ranked)
        for rank, cond in enumerate(ranked):
            if k == 1:
                lum = (lum_lo + lum_hi) / 2.0
            else:
                lum = lum_lo + (lum_hi - lum_lo) * rank / (k - 1)
            condition_luminance[cond.id] = lum
            luminance_rank[cond.id] = rank
    condition_rgb = {
        cond.id: hcl_to_rgb(
            feature_hues[cond.source_feature], CHROMA, condition_luminance[cond.id]
        )
        for cond in conditions
    }
    return ColorMap(
        feature_hues=feature_hues,
        feature_index=feature_index,
        condition_luminance=condition_luminance,
        luminance_rank=luminance_rank,
        condition_rgb=condition_rgb,
    )
