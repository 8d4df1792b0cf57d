"""The capture loop: video frames in, landmark stream records out.

Emits the vigil engine's .vlm.jsonl format exactly: a header line, then
one record per processed frame with 136 coordinates or null when no face
was found. When several faces are detected the one with the largest
bounding box wins (the driver fills more of a cabin camera's view than a
passenger). Timestamps derive from the frame index and the source fps.

No detection logic lives here on purpose: the analysis engine is the
single source of drowsiness truth, this tool only transports geometry.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import IO

import cv2

from .errors import SourceUnavailableError
from .predictor import load_predictor

STREAM_VERSION = 1
DEFAULT_FPS = 30.0


@dataclass(frozen=True)
class CaptureConfig:
    source: str                      # video path or "cam:N"
    predictor_model_path: str
    output_path: str
    fps_override: float | None = None
    max_frames: int | None = None


def _open_source(source: str) -> cv2.VideoCapture:
    if source.startswith("cam:"):
        try:
            index = int(source[4:])
        except ValueError:
            raise SourceUnavailableError(f"bad camera spec {source!r} (want cam:N)") from None
        cap = cv2.VideoCapture(index)
    else:
        cap = cv2.VideoCapture(source)
    if not cap.isOpened():
        cap.release()
        raise SourceUnavailableError(f"cannot open video source {source!r}")
    return cap


def _source_fps(cap: cv2.VideoCapture, override: float | None) -> float:
    if override is not None:
        if override <= 0:
            raise SourceUnavailableError(f"fps override must be positive, got {override}")
        return float(override)
    fps = cap.get(cv2.CAP_PROP_FPS)
    if not fps or fps <= 0 or fps != fps:  # 0/NaN from cameras without a clock
        return DEFAULT_FPS
    return float(fps)


def _write_header(sink: IO[str], source: str, fps: float) -> None:
    head = {"version": STREAM_VERSION, "source": f"capture: {source}", "fps_hint": fps}
    sink.write(json.dumps(head, separators=(",", ":")) + "\n")


def _write_record(sink: IO[str], frame_index: int, timestamp_ms: int, points) -> None:
    coords = None
    if points is not None:
        coords = []
        for x, y in points:
            coords.append(round(float(x), 6))
            coords.append(round(float(y), 6))
    record = {"frame_index": frame_index, "timestamp_ms": timestamp_ms, "points": coords}
    sink.write(json.dumps(record, separators=(",", ":")) + "\n")


def capture(config: CaptureConfig) -> int:
    """Run the capture loop; returns the number of records written."""
    predictor = load_predictor(config.predictor_model_path)
    cap = _open_source(config.source)
    try:
        fps = _source_fps(cap, config.fps_override)
        written = 0
        with open(config.output_path, "w", encoding="utf-8", newline="") as sink:
            _write_header(sink, config.source, fps)
            while config.max_frames is None or written < config.max_frames:
                ok, frame = cap.read()
                if not ok:
                    break
                candidates = predictor.detect(frame)
                best = max(candidates, key=lambda c: c.bbox_area) if candidates else None
                timestamp_ms = round(written * 1000.0 / fps)
                _write_record(sink, written, timestamp_ms, best.points if best else None)
                written += 1
        return written
    finally:
        cap.release()
