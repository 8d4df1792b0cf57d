"""Synthetic 68-point faces with exact, scriptable metrics.

Builds landmark frames whose EAR, MAR, and orientation angle equal requested
values, which makes whole detection scenarios scriptable without any vision
model: tests, demos, benchmarks, and the golden fixtures all draw from here.

The construction places both eyes and the mouth symmetrically around the
eye midpoint, sizes the lid gap as ear * eye_span and the lip gap from mar,
then rotates the whole face about the eye midpoint by the requested angle.
Aspect ratios are distance ratios, so the rotation leaves them untouched
while the eye-to-mouth axis tilts by exactly the requested amount.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

from .geometry import Point2
from .landmarks import LandmarkFrame
from .stream_io import StreamHeader

EYE_SPAN = 30.0
EYE_OFFSET_X = 40.0
MOUTH_SPAN = 60.0
MOUTH_DROP = 60.0


def _eye(cx: float, half_gap: float) -> list[tuple[float, float]]:
    # 6 contour points in index order: corner, two upper, corner, two lower.
    h = EYE_SPAN / 2.0
    return [
        (cx - h, 0.0),
        (cx - 5.0, -half_gap),
        (cx + 5.0, -half_gap),
        (cx + h, 0.0),
        (cx + 5.0, half_gap),
        (cx - 5.0, half_gap),
    ]


def synthetic_face_points(
    ear: float = 0.32,
    mar: float = 0.30,
    angle_deg: float = 0.0,
    center: tuple[float, float] = (320.0, 240.0),
    scale: float = 1.0,
) -> tuple[Point2, ...]:
    """All 68 landmarks of a face with the given metrics.

    center places the eye midpoint; angle_deg rotates the face about it, so
    compute_metrics on the result reports exactly ear, mar, and |angle_deg|
    (up to float rounding). ear and mar must be >= 0, scale > 0.
    """
    if ear < 0 or mar < 0:
        raise ValueError("ear and mar must be >= 0")
    if scale <= 0:
        raise ValueError("scale must be > 0")
    lid_half_gap = ear * EYE_SPAN / 2.0
    lip_half_gap = mar * MOUTH_SPAN / 3.0  # MAR = 3 * (2*gap) / (2 * span)

    pts: list[tuple[float, float]] = [(0.0, 0.0)] * 68

    # Jaw 0-16: an open arc below the face.
    for i in range(17):
        t = (i - 8) / 8.0
        pts[i] = (t * 75.0, 40.0 + 80.0 * math.cos(t * math.pi / 2.0))
    # Brows 17-26: two arcs above the eyes.
    for i in range(5):
        pts[17 + i] = (-EYE_OFFSET_X - 20.0 + 10.0 * i, -20.0 - 3.0 * math.sin(math.pi * i / 4.0))
        pts[22 + i] = (EYE_OFFSET_X - 20.0 + 10.0 * i, -20.0 - 3.0 * math.sin(math.pi * i / 4.0))
    # Nose 27-35: bridge then nostril line.
    for i in range(4):
        pts[27 + i] = (0.0, 5.0 + 10.0 * i)
    for i in range(5):
        pts[31 + i] = (-10.0 + 5.0 * i, 42.0)

    for i, xy in enumerate(_eye(-EYE_OFFSET_X, lid_half_gap)):
        pts[36 + i] = xy
    for i, xy in enumerate(_eye(EYE_OFFSET_X, lid_half_gap)):
        pts[42 + i] = xy

    # Outer lip 48-59: corners on the midline, top arc 49-53, bottom arc 55-59
    # mirrored so the ring centroid sits exactly at (0, MOUTH_DROP).
    half_span = MOUTH_SPAN / 2.0
    g = lip_half_gap
    top = [(-20.0, -0.8 * g), (-10.0, -g), (0.0, -g), (10.0, -g), (20.0, -0.8 * g)]
    pts[48] = (-half_span, MOUTH_DROP)
    for i, (dx, dy) in enumerate(top):
        pts[49 + i] = (dx, MOUTH_DROP + dy)
    pts[54] = (half_span, MOUTH_DROP)
    for i, (dx, dy) in enumerate(reversed(top)):
        pts[55 + i] = (dx, MOUTH_DROP - dy)
    # Inner lip 60-67: a smaller ring, kept symmetric.
    inner = [(-15.0, 0.0), (-7.0, -0.6 * g), (0.0, -0.6 * g), (7.0, -0.6 * g), (15.0, 0.0)]
    for i, (dx, dy) in enumerate(inner):
        pts[60 + i] = (dx, MOUTH_DROP + dy)
    for i, (dx, dy) in enumerate([(7.0, 0.6 * g), (0.0, 0.6 * g), (-7.0, 0.6 * g)]):
        pts[65 + i] = (dx, MOUTH_DROP + dy)

    theta = math.radians(angle_deg)
    cos_t, sin_t = math.cos(theta), math.sin(theta)
    cx, cy = center
    out = []
    for x, y in pts:
        x *= scale
        y *= scale
        out.append(Point2(cx + x * cos_t - y * sin_t, cy + x * sin_t + y * cos_t))
    return tuple(out)


def frame_from_metrics(
    frame_index: int,
    timestamp_ms: int,
    spec: tuple[float, float, float] | None,
    center: tuple[float, float] = (320.0, 240.0),
    scale: float = 1.0,
) -> LandmarkFrame:
    """One stream frame from an (ear, mar, angle_deg) triple, or a no-face frame."""
    if spec is None:
        return LandmarkFrame(frame_index, timestamp_ms, None)
    ear, mar, angle_deg = spec
    return LandmarkFrame(
        frame_index, timestamp_ms, synthetic_face_points(ear, mar, angle_deg, center, scale)
    )


def build_stream(
    frame_specs: Iterable[tuple[float, float, float] | None],
    fps: float = 30.0,
    source: str = "synthetic",
) -> tuple[StreamHeader, list[LandmarkFrame]]:
    """A full stream from per-frame metric specs; None rows are no-face frames."""
    frames = [
        frame_from_metrics(i, round(i * 1000.0 / fps), spec)
        for i, spec in enumerate(frame_specs)
    ]
    return StreamHeader(source=source, fps_hint=fps), frames


def constant_stream(
    n_frames: int,
    ear: float = 0.32,
    mar: float = 0.30,
    angle_deg: float = 0.0,
    fps: float = 30.0,
) -> tuple[StreamHeader, list[LandmarkFrame]]:
    """n identical face-present frames; handy for benchmarks and smoke tests."""
    specs: Sequence[tuple[float, float, float]] = [(ear, mar, angle_deg)] * n_frames
    return build_stream(specs, fps=fps, source=f"synthetic-constant-{n_frames}")
