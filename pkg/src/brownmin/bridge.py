"""Conditional laws of Brownian motion between two observed values.

Given endpoint values a = W(t0) and b = W(t0 + T), the path in between is
a Brownian bridge.  This module provides the interior (mid)point law and
the law of the bridge minimum,

    P(min < y) = exp(-2 (a - y) (b - y) / T)   for y < min(a, b),

with exact inverse-CDF sampling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class BridgeSegment:
    """Endpoint values and length of one conditioned path segment."""

    a: float
    b: float
    T: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise ValueError("segment endpoint values must be finite")
        if not (self.T > 0.0 and math.isfinite(self.T)):
            raise ValueError(f"segment length must be positive and finite, got {self.T}")


def _interior(a: float, b: float, T: float, s: float, z: float) -> float:
    return a + (s / T) * (b - a) + math.sqrt(s * (T - s) / T) * z


def interior_sample(seg: BridgeSegment, s: float, z: float) -> float:
    """Value of the bridge at offset s in (0, T), driven by a N(0,1) input z.

    Returns a + (s/T)(b - a) + sqrt(s (T - s) / T) * z.  At s = T/2 this is
    the midpoint law: mean (a + b)/2, standard deviation sqrt(T)/2.
    """
    if not 0.0 < s < seg.T:
        raise ValueError(f"offset {s} outside (0, {seg.T})")
    return _interior(seg.a, seg.b, seg.T, s, z)


def bridge_min_cdf(seg: BridgeSegment, y: float) -> float:
    """P(minimum over the segment < y), equal to 1 for y >= min(a, b)."""
    if y >= min(seg.a, seg.b):
        return 1.0
    return math.exp(-2.0 * (seg.a - y) * (seg.b - y) / seg.T)


def bridge_min_sample(seg: BridgeSegment, u: float) -> float:
    """Inverse CDF of the bridge minimum at u in (0, 1].

    Solves exp(-2 (a - y)(b - y) / T) = u for the root y <= min(a, b):

        y = ((a + b) - sqrt((a - b)^2 + 4 c)) / 2,   c = -T ln(u) / 2.

    The discriminant is (a - b)^2 + 4c >= 0 since c >= 0.  u = 1 returns
    min(a, b) exactly; elsewhere the result is clamped to min(a, b), which
    the law guarantees but the root formula can miss by one rounding step.
    """
    if not 0.0 < u <= 1.0:
        raise ValueError(f"u must be in (0, 1], got {u}")
    if u == 1.0:
        return min(seg.a, seg.b)
    c = -seg.T * math.log(u) / 2.0
    y = ((seg.a + seg.b) - math.sqrt((seg.a - seg.b) ** 2 + 4.0 * c)) / 2.0
    return min(y, seg.a, seg.b)


def segment_minima(
    values: np.ndarray, lengths: np.ndarray, uniforms: np.ndarray
) -> np.ndarray:
    """Vectorised bridge-minimum sampling over consecutive segments.

    ``values`` holds n+1 endpoint values, ``lengths`` the n segment lengths
    and ``uniforms`` n draws in (0, 1].  Returns the n sampled minima.
    """
    values = np.asarray(values, dtype=float)
    lengths = np.asarray(lengths, dtype=float)
    uniforms = np.asarray(uniforms, dtype=float)
    if len(values) != len(lengths) + 1 or len(uniforms) != len(lengths):
        raise ValueError("need n+1 values, n lengths and n uniforms")
    if np.any(uniforms <= 0.0) or np.any(uniforms > 1.0):
        raise ValueError("uniforms must lie in (0, 1]")
    a = values[:-1]
    b = values[1:]
    c = -lengths * np.log(uniforms) / 2.0
    y = ((a + b) - np.sqrt((a - b) ** 2 + 4.0 * c)) / 2.0
    endpoint_min = np.minimum(a, b)
    return np.where(uniforms == 1.0, endpoint_min, np.minimum(y, endpoint_min))
