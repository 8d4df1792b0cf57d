"""The 68-point facial landmark layout: regions, extraction, validation.

Index conventions follow the canonical 68-point annotation scheme that
every common shape predictor emits: jaw 0-16, brows 17-26, nose 27-35,
right eye 36-41, left eye 42-47, mouth 48-67 (outer lip 48-59, inner lip
60-67). "Right eye" is the subject's right eye, which appears on the left
side of the image.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import VigilError
from .geometry import Point2

LANDMARK_COUNT = 68

RIGHT_EYE_INDICES = tuple(range(36, 42))
LEFT_EYE_INDICES = tuple(range(42, 48))
MOUTH_OUTER_INDICES = tuple(range(48, 60))
# Corner, top-1..3, corner, bottom-3..1: the 8-point order mouth_aspect_ratio expects.
MOUTH_MAR_INDICES = (48, 50, 51, 52, 54, 56, 57, 58)


class NoFaceError(VigilError):
    """The frame carries no landmark points."""


class FaceRegion(Enum):
    RIGHT_EYE = "right_eye"
    LEFT_EYE = "left_eye"
    MOUTH_OUTER = "mouth_outer"
    MOUTH_MAR_POINTS = "mouth_mar_points"


_REGION_INDICES = {
    FaceRegion.RIGHT_EYE: RIGHT_EYE_INDICES,
    FaceRegion.LEFT_EYE: LEFT_EYE_INDICES,
    FaceRegion.MOUTH_OUTER: MOUTH_OUTER_INDICES,
    FaceRegion.MOUTH_MAR_POINTS: MOUTH_MAR_INDICES,
}


@dataclass(frozen=True, slots=True)
class LandmarkFrame:
    """One timestamped landmark observation.

    points is None when no face was detected this frame, otherwise exactly
    68 points in canonical order. Frames inside one stream carry strictly
    increasing frame_index and non-decreasing timestamp_ms; the stream
    parser enforces that, validate_frame checks the per-frame part.
    """

    frame_index: int
    timestamp_ms: int
    points: tuple[Point2, ...] | None

    @property
    def face_present(self) -> bool:
        return self.points is not None


def region_indices(region: FaceRegion) -> tuple[int, ...]:
    """Landmark indices of a region, in extraction order."""
    return _REGION_INDICES[region]


def extract_region(frame: LandmarkFrame, region: FaceRegion) -> tuple[Point2, ...]:
    """Points of the given region, in region_indices order."""
    if frame.points is None:
        raise NoFaceError(f"frame {frame.frame_index} has no face")
    pts = frame.points
    return tuple(pts[i] for i in _REGION_INDICES[region])


def _centroid(points: tuple[Point2, ...]) -> Point2:
    n = len(points)
    return Point2(sum(p.x for p in points) / n, sum(p.y for p in points) / n)


def eye_midpoint(frame: LandmarkFrame) -> Point2:
    """Midpoint of the two per-eye centroids.

    Averaging the centroids (rather than pooling all 12 eye points) keeps
    the midpoint unbiased if the two eye contours ever differ in density.
    """
    right = _centroid(extract_region(frame, FaceRegion.RIGHT_EYE))
    left = _centroid(extract_region(frame, FaceRegion.LEFT_EYE))
    return Point2((right.x + left.x) / 2.0, (right.y + left.y) / 2.0)


def mouth_midpoint(frame: LandmarkFrame) -> Point2:
    """Centroid of the outer-lip points 48-59.

    Inner-lip points are excluded: they collapse onto each other when the
    mouth closes and would make the midpoint jitter.
    """
    return _centroid(extract_region(frame, FaceRegion.MOUTH_OUTER))


def validate_frame(frame: LandmarkFrame) -> list[str]:
    """Check per-frame invariants; returns a list of violations, [] when ok.

    Violations are returned rather than raised so callers can report all
    problems of a frame at once. Points are duck-typed (anything with x/y
    or a 2-sequence) so hand-built frames can be checked too.
    """
    violations: list[str] = []
    if frame.frame_index < 0:
        violations.append(f"negative frame_index {frame.frame_index}")
    if frame.timestamp_ms < 0:
        violations.append(f"negative timestamp_ms {frame.timestamp_ms}")
    if frame.points is None:
        return violations
    if len(frame.points) != LANDMARK_COUNT:
        violations.append(f"expected {LANDMARK_COUNT} points, got {len(frame.points)}")
    for i, p in enumerate(frame.points):
        try:
            x, y = (p.x, p.y) if hasattr(p, "x") else (p[0], p[1])
        except (TypeError, IndexError):
            violations.append(f"unreadable point at index {i}")
            continue
        if not (math.isfinite(x) and math.isfinite(y)):
            violations.append(f"non-finite coordinate at index {i}")
    return violations
