"""Deterministic drowsiness analysis over 68-point facial-landmark streams.

The engine consumes timestamped landmark frames (from a recorded .vlm.jsonl
file or a live feed) and emits blink, drowsiness, yawn, face-misalignment,
and face-lost events, plus a per-frame state timeseries for plotting. No
vision model is involved on this side of the stream boundary, which keeps
every run exactly reproducible.
"""

from .detector import (
    DetectionEvent,
    Detector,
    DetectorConfig,
    EventKind,
    FaceMetrics,
    FrameAssessment,
    SessionSummary,
    StateLabel,
    compute_metrics,
)
from .errors import InvalidConfigError, VigilError
from .geometry import (
    Point2,
    Vector2,
    angle_between_vectors,
    calculate_slope,
    euclidean_distance,
    eye_aspect_ratio,
    mouth_aspect_ratio,
)
from .landmarks import (
    FaceRegion,
    LandmarkFrame,
    extract_region,
    eye_midpoint,
    mouth_midpoint,
    region_indices,
    validate_frame,
)
from .session import (
    GroundTruthLabel,
    SessionReport,
    emit_plot_data,
    load_labels,
    rolling_accuracy,
    run_replay,
)
from .stream_io import (
    StreamHeader,
    load_config,
    parse_landmark_stream,
    write_event_csv,
    write_landmark_stream,
    write_metrics_csv,
)

__version__ = "0.1.0"

__all__ = [
    "DetectionEvent",
    "Detector",
    "DetectorConfig",
    "EventKind",
    "FaceMetrics",
    "FaceRegion",
    "FrameAssessment",
    "GroundTruthLabel",
    "InvalidConfigError",
    "LandmarkFrame",
    "Point2",
    "SessionReport",
    "SessionSummary",
    "StateLabel",
    "StreamHeader",
    "Vector2",
    "VigilError",
    "angle_between_vectors",
    "calculate_slope",
    "compute_metrics",
    "emit_plot_data",
    "euclidean_distance",
    "extract_region",
    "eye_aspect_ratio",
    "eye_midpoint",
    "load_config",
    "load_labels",
    "mouth_aspect_ratio",
    "mouth_midpoint",
    "parse_landmark_stream",
    "region_indices",
    "rolling_accuracy",
    "run_replay",
    "validate_frame",
    "write_event_csv",
    "write_landmark_stream",
    "write_metrics_csv",
]
