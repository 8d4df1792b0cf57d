"""Streaming drowsiness detection over landmark frames.

Per-frame metric computation (EAR, MAR, orientation angle) and the temporal
state machine that turns threshold crossings into debounced events. One
detector instance owns one frame stream and is strictly sequential;
independent instances never share state.

Transition rules, applied in order on every frame:

  (a) no face: count the gap; FACE_LOST fires on the first missing frame;
      a gap reaching face_lost_reset_frames erases the running eye-closure
      episode and re-arms the yawn trigger.
  (b) face back after a gap: FACE_REACQUIRED fires, the gap counter clears.
      A gap shorter than face_lost_reset_frames does not erase a closure
      episode, so brief detector dropouts cannot split a blink.
  (c) orientation gate: while the eye-to-mouth axis deviates from straight
      down by more than align_angle_threshold_deg, eye and mouth rules are
      suspended and the closure episode resets (EAR measured on a turned
      face is distorted); MISALIGNMENT_ALERT fires only on the transition
      into misalignment.
  (d) eyes: mean EAR below ear_threshold extends the closure run; the run
      reaching drowsy_consec_frames fires DROWSINESS_ALERT exactly once per
      episode; recovery after a run of blink_min_frames..drowsy_consec-1
      frames fires BLINK at the recovery frame.
  (e) mouth: MAR above mar_threshold fires YAWN_ALERT once and disarms
      until MAR falls back below the threshold (edge-triggered hysteresis,
      so one yawn cannot emit dozens of events).

Within one frame, events always come out in the order FACE_*,
MISALIGNMENT_ALERT, BLINK, DROWSINESS_ALERT, YAWN_ALERT.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .errors import InvalidConfigError, VigilError
from .geometry import Vector2, angle_between_vectors, eye_aspect_ratio, mouth_aspect_ratio
from .landmarks import (
    FaceRegion,
    LandmarkFrame,
    NoFaceError,
    extract_region,
    eye_midpoint,
    mouth_midpoint,
)

# Straight down in image coordinates: the direction the eye-midpoint ->
# mouth-midpoint axis points on an upright frontal face.
FRONTAL_REFERENCE = Vector2(0.0, 1.0)


class OutOfOrderFrameError(VigilError):
    """Frames must arrive with strictly increasing frame_index."""


class EventKind(str, Enum):
    BLINK = "BLINK"
    DROWSINESS_ALERT = "DROWSINESS_ALERT"
    YAWN_ALERT = "YAWN_ALERT"
    MISALIGNMENT_ALERT = "MISALIGNMENT_ALERT"
    FACE_LOST = "FACE_LOST"
    FACE_REACQUIRED = "FACE_REACQUIRED"


class StateLabel(str, Enum):
    ACTIVE = "ACTIVE"
    EYES_CLOSED = "EYES_CLOSED"
    DROWSY = "DROWSY"
    YAWNING = "YAWNING"
    MISALIGNED = "MISALIGNED"
    FACE_LOST = "FACE_LOST"


@dataclass(frozen=True, slots=True)
class DetectorConfig:
    """All thresholds and debounce counts.

    The defaults follow the values commonly used with 68-point landmark
    streams at ~30 fps; every one is a free parameter. Invalid combinations
    are unrepresentable: construction validates every field.
    """

    ear_threshold: float = 0.25
    drowsy_consec_frames: int = 48
    mar_threshold: float = 0.60
    align_angle_threshold_deg: float = 15.0
    face_lost_reset_frames: int = 5
    blink_min_frames: int = 1

    def __post_init__(self):
        if not 0.0 < self.ear_threshold < 1.0:
            raise InvalidConfigError("ear_threshold", "out of range (must be in (0, 1))")
        if not self.mar_threshold > 0.0:
            raise InvalidConfigError("mar_threshold", "out of range (must be > 0)")
        if not 0.0 < self.align_angle_threshold_deg < 90.0:
            raise InvalidConfigError(
                "align_angle_threshold_deg", "out of range (must be in (0, 90))"
            )
        for key in ("drowsy_consec_frames", "face_lost_reset_frames", "blink_min_frames"):
            if getattr(self, key) < 1:
                raise InvalidConfigError(key, "out of range (must be >= 1)")
        if not self.blink_min_frames < self.drowsy_consec_frames:
            raise InvalidConfigError(
                "blink_min_frames", "out of range (must be < drowsy_consec_frames)"
            )


@dataclass(frozen=True, slots=True)
class FaceMetrics:
    """Per-frame scalars derived from one face-present frame."""

    ear_left: float
    ear_right: float
    ear_mean: float
    mar: float
    angle_deg: float


@dataclass(slots=True)
class DetectorState:
    """Running counters and flags of one detector instance."""

    closed_run: int = 0
    drowsy_fired: bool = False
    yawn_armed: bool = True
    misaligned: bool = False
    no_face_run: int = 0
    blink_count: int = 0
    frames_seen: int = 0
    last_frame_index: int | None = None
    event_counts: dict[EventKind, int] = field(
        default_factory=lambda: {kind: 0 for kind in EventKind}
    )


@dataclass(frozen=True, slots=True)
class DetectionEvent:
    kind: EventKind
    frame_index: int
    timestamp_ms: int
    metrics: FaceMetrics | None
    detail: str = ""


@dataclass(frozen=True, slots=True)
class FrameAssessment:
    """Per-frame verdict: what state the face was in on this frame."""

    frame_index: int
    timestamp_ms: int
    face_present: bool
    metrics: FaceMetrics | None
    state_label: StateLabel


@dataclass(frozen=True, slots=True)
class SessionSummary:
    frames_seen: int
    blink_count: int
    event_counts: dict[EventKind, int]


def compute_metrics(frame: LandmarkFrame) -> FaceMetrics:
    """EAR per eye and averaged, MAR, and the frontal deviation angle.

    The angle is measured between the eye-midpoint -> mouth-midpoint vector
    and the straight-down reference; 0 means the face is upright and
    frontal. Degenerate landmark geometry (zero eye span, coincident
    midpoints) propagates the corresponding geometry error.
    """
    if frame.points is None:
        raise NoFaceError(f"frame {frame.frame_index} has no face")
    ear_right = eye_aspect_ratio(extract_region(frame, FaceRegion.RIGHT_EYE))
    ear_left = eye_aspect_ratio(extract_region(frame, FaceRegion.LEFT_EYE))
    mar = mouth_aspect_ratio(extract_region(frame, FaceRegion.MOUTH_MAR_POINTS))
    axis = mouth_midpoint(frame) - eye_midpoint(frame)
    angle = angle_between_vectors(axis, FRONTAL_REFERENCE)
    return FaceMetrics(
        ear_left=ear_left,
        ear_right=ear_right,
        ear_mean=(ear_left + ear_right) / 2.0,
        mar=mar,
        angle_deg=angle,
    )


class Detector:
    """The per-stream event state machine.

    Feed frames (or pre-computed metrics) in frame order; each call returns
    the frame's assessment and any events it fired. Deterministic: the same
    config and frame sequence always produce the same output.
    """

    def __init__(self, config: DetectorConfig | None = None):
        self.config = config if config is not None else DetectorConfig()
        self.state = DetectorState()

    def process_frame(self, frame: LandmarkFrame) -> tuple[FrameAssessment, list[DetectionEvent]]:
        metrics = compute_metrics(frame) if frame.points is not None else None
        return self.process_metrics(frame.frame_index, frame.timestamp_ms, metrics)

    def process_metrics(
        self, frame_index: int, timestamp_ms: int, metrics: FaceMetrics | None
    ) -> tuple[FrameAssessment, list[DetectionEvent]]:
        """Advance the state machine by one frame; metrics None means no face."""
        s = self.state
        cfg = self.config
        if s.last_frame_index is not None and frame_index <= s.last_frame_index:
            raise OutOfOrderFrameError(
                f"frame_index {frame_index} does not increase past {s.last_frame_index}"
            )
        s.last_frame_index = frame_index
        s.frames_seen += 1
        events: list[DetectionEvent] = []

        def emit(kind: EventKind, detail: str, with_metrics: FaceMetrics | None = None):
            events.append(DetectionEvent(kind, frame_index, timestamp_ms, with_metrics, detail))
            s.event_counts[kind] += 1

        if metrics is None:
            s.no_face_run += 1
            if s.no_face_run == 1:
                emit(EventKind.FACE_LOST, "no face detected")
            if s.no_face_run >= cfg.face_lost_reset_frames:
                s.closed_run = 0
                s.drowsy_fired = False
                s.yawn_armed = True
            assessment = FrameAssessment(
                frame_index, timestamp_ms, False, None, StateLabel.FACE_LOST
            )
            return assessment, events

        if s.no_face_run > 0:
            emit(EventKind.FACE_REACQUIRED, f"face absent for {s.no_face_run} frames", metrics)
            s.no_face_run = 0

        if metrics.angle_deg > cfg.align_angle_threshold_deg:
            if not s.misaligned:
                emit(
                    EventKind.MISALIGNMENT_ALERT,
                    f"angle {metrics.angle_deg:.4f} deg exceeds {cfg.align_angle_threshold_deg:g} deg",
                    metrics,
                )
                s.misaligned = True
            s.closed_run = 0
            s.drowsy_fired = False
            assessment = FrameAssessment(
                frame_index, timestamp_ms, True, metrics, StateLabel.MISALIGNED
            )
            return assessment, events
        s.misaligned = False

        if metrics.ear_mean < cfg.ear_threshold:
            s.closed_run += 1
            if s.closed_run == cfg.drowsy_consec_frames and not s.drowsy_fired:
                emit(
                    EventKind.DROWSINESS_ALERT,
                    f"eyes closed for {s.closed_run} consecutive frames",
                    metrics,
                )
                s.drowsy_fired = True
            label = StateLabel.DROWSY if s.drowsy_fired else StateLabel.EYES_CLOSED
        else:
            run = s.closed_run
            if cfg.blink_min_frames <= run < cfg.drowsy_consec_frames:
                emit(EventKind.BLINK, f"recovered after {run} frames", metrics)
                s.blink_count += 1
            s.closed_run = 0
            s.drowsy_fired = False
            label = StateLabel.ACTIVE

        if metrics.mar > cfg.mar_threshold:
            if s.yawn_armed:
                emit(
                    EventKind.YAWN_ALERT,
                    f"mar {metrics.mar:.4f} exceeds {cfg.mar_threshold:g}",
                    metrics,
                )
                s.yawn_armed = False
                label = StateLabel.YAWNING
        else:
            s.yawn_armed = True

        return FrameAssessment(frame_index, timestamp_ms, True, metrics, label), events

    def finalize(self) -> SessionSummary:
        """Read out totals; fires nothing and can be called at any point."""
        s = self.state
        return SessionSummary(
            frames_seen=s.frames_seen,
            blink_count=s.blink_count,
            event_counts=dict(s.event_counts),
        )
