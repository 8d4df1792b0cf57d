"""Planar geometry over facial landmarks.

Distances, slopes, vector angles, and the aspect ratios that quantify eye
closure and mouth opening. Everything works in image coordinates: x grows
to the right, y grows downward. All functions are pure; all values are
immutable and safe to share between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import VigilError


class VerticalLineError(VigilError):
    """Slope is undefined for a vertical segment."""


class ZeroVectorError(VigilError):
    """Angle is undefined when either vector has zero magnitude."""


class DegenerateEyeError(VigilError):
    """Eye landmarks collapsed to zero horizontal span."""


class DegenerateMouthError(VigilError):
    """Mouth corners collapsed to zero span."""


@dataclass(frozen=True, slots=True)
class Point2:
    """A point in image coordinates (pixels).

    Coordinates must be finite; NaN or infinity is rejected at construction
    so downstream math never has to re-check.
    """

    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite coordinate: ({self.x!r}, {self.y!r})")

    def __sub__(self, other: "Point2") -> "Vector2":
        return Vector2(self.x - other.x, self.y - other.y)


@dataclass(frozen=True, slots=True)
class Vector2:
    """A displacement in image coordinates (pixels)."""

    dx: float
    dy: float

    def __post_init__(self):
        if not (math.isfinite(self.dx) and math.isfinite(self.dy)):
            raise ValueError(f"non-finite component: ({self.dx!r}, {self.dy!r})")

    @property
    def magnitude(self) -> float:
        return math.hypot(self.dx, self.dy)


def euclidean_distance(p: Point2, q: Point2) -> float:
    """Distance between two points, always >= 0 and symmetric."""
    return math.hypot(p.x - q.x, p.y - q.y)


def calculate_slope(p1: Point2, p2: Point2) -> float:
    """Slope (dy/dx) of the segment from p1 to p2.

    Raises VerticalLineError when p1.x == p2.x: the caller must not apply
    slope-based logic to vertical segments.
    """
    if p1.x == p2.x:
        raise VerticalLineError(f"vertical segment at x={p1.x}")
    return (p2.y - p1.y) / (p2.x - p1.x)


def angle_between_vectors(v1: Vector2, v2: Vector2) -> float:
    """Unsigned angle between two vectors, in degrees within [0, 180].

    This is arccos of the normalized dot product, evaluated as
    atan2(|cross|, dot): the arccos form loses ~6 digits near 0 and 180
    degrees where its derivative blows up, while atan2 stays exact there
    (parallel vectors have an exactly zero cross product).

    Raises ZeroVectorError when either magnitude is zero, which signals
    degenerate landmark geometry upstream.
    """
    if (v1.dx == 0.0 and v1.dy == 0.0) or (v2.dx == 0.0 and v2.dy == 0.0):
        raise ZeroVectorError("angle undefined for zero-magnitude vector")
    dot = v1.dx * v2.dx + v1.dy * v2.dy
    cross = v1.dx * v2.dy - v1.dy * v2.dx
    angle = math.degrees(math.atan2(abs(cross), dot))
    return max(0.0, min(180.0, angle))


def eye_aspect_ratio(eye: Sequence[Point2]) -> float:
    """Eye aspect ratio over 6 contour points.

    Expects the points ordered p1..p6 around the eye: p1 outer corner,
    p2/p3 upper lid, p4 inner corner, p5/p6 lower lid. Returns
    (|p2-p6| + |p3-p5|) / (2 * |p1-p4|), which falls toward 0 as the
    eye closes and is invariant to translation, rotation, and uniform
    scale.

    Raises DegenerateEyeError when the horizontal span |p1-p4| is zero.
    """
    if len(eye) != 6:
        raise ValueError(f"expected 6 eye points, got {len(eye)}")
    span = euclidean_distance(eye[0], eye[3])
    if span == 0.0:
        raise DegenerateEyeError("eye corners coincide")
    vertical = euclidean_distance(eye[1], eye[5]) + euclidean_distance(eye[2], eye[4])
    return vertical / (2.0 * span)


def mouth_aspect_ratio(mouth: Sequence[Point2]) -> float:
    """Mouth aspect ratio over 8 lip points.

    Expects (left corner, top-1, top-2, top-3, right corner, bottom-3,
    bottom-2, bottom-1); the tops pair with the bottoms by number. Returns
    (|t1-b1| + |t2-b2| + |t3-b3|) / (2 * |corner-corner|), which rises as
    the mouth opens.

    Raises DegenerateMouthError when the corner span is zero.
    """
    if len(mouth) != 8:
        raise ValueError(f"expected 8 mouth points, got {len(mouth)}")
    span = euclidean_distance(mouth[0], mouth[4])
    if span == 0.0:
        raise DegenerateMouthError("mouth corners coincide")
    vertical = (
        euclidean_distance(mouth[1], mouth[7])
        + euclidean_distance(mouth[2], mouth[6])
        + euclidean_distance(mouth[3], mouth[5])
    )
    return vertical / (2.0 * span)
