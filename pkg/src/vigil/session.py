"""Whole-run orchestration: replay a stream, score it, emit report files.

A session is a pure fold of the detector over one stream: replaying the
same bytes with the same config always yields the same report. When ground
truth labels are supplied, the session also computes a rolling accuracy
series (windowed fraction of labeled frames whose predicted state matched),
which is what gets plotted to judge the run over time.
"""

from __future__ import annotations

import csv
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, Sequence

from .detector import (
    DetectionEvent,
    Detector,
    DetectorConfig,
    FrameAssessment,
    SessionSummary,
    StateLabel,
)
from .errors import VigilError
from .stream_io import parse_landmark_stream, write_metrics_csv

DEFAULT_ACCURACY_WINDOW = 30

ACCURACY_CSV_HEADER = "frame_index,accuracy"


class LabelError(VigilError):
    """A ground-truth label file is malformed or inconsistent with the stream."""


@dataclass(frozen=True, slots=True)
class GroundTruthLabel:
    frame_index: int
    label: StateLabel


@dataclass(frozen=True, slots=True)
class SessionReport:
    summary: SessionSummary
    events: list[DetectionEvent]
    metrics_rows: list[FrameAssessment]
    # None when no labels were supplied; [] when labels were supplied but empty.
    accuracy_series: list[tuple[int, float]] | None


def load_labels(source: IO[str] | Iterable[str]) -> list[GroundTruthLabel]:
    """Read a frame_index,label CSV; frame indices must be unique."""
    reader = csv.reader(source)
    labels: list[GroundTruthLabel] = []
    seen: set[int] = set()
    valid = {label.value for label in StateLabel}
    for n, row in enumerate(reader, start=1):
        if not row:
            continue
        if n == 1 and row == ["frame_index", "label"]:
            continue
        if len(row) != 2:
            raise LabelError(f"label line {n}: expected frame_index,label, got {row!r}")
        try:
            frame_index = int(row[0])
        except ValueError:
            raise LabelError(f"label line {n}: bad frame_index {row[0]!r}") from None
        if row[1] not in valid:
            raise LabelError(f"label line {n}: unknown label {row[1]!r}")
        if frame_index in seen:
            raise LabelError(f"label line {n}: duplicate frame_index {frame_index}")
        seen.add(frame_index)
        labels.append(GroundTruthLabel(frame_index, StateLabel(row[1])))
    return labels


def rolling_accuracy(
    assessments: Sequence[FrameAssessment],
    labels: Sequence[GroundTruthLabel],
    window: int = DEFAULT_ACCURACY_WINDOW,
) -> list[tuple[int, float]]:
    """Windowed label-match rate, one point per labeled frame.

    For each labeled frame (in frame order) the value is the fraction of
    matches among the last `window` labeled frames seen so far, so the
    series starts reactive and settles as the window fills. Empty labels
    give an empty series.
    """
    if window < 1:
        raise ValueError(f"window must be >= 1, got {window}")
    by_frame = {a.frame_index: a for a in assessments}
    recent: deque[int] = deque(maxlen=window)
    series: list[tuple[int, float]] = []
    for label in sorted(labels, key=lambda l: l.frame_index):
        assessment = by_frame.get(label.frame_index)
        if assessment is None:
            raise LabelError(f"label references frame_index {label.frame_index} not in stream")
        recent.append(1 if assessment.state_label == label.label else 0)
        series.append((label.frame_index, sum(recent) / len(recent)))
    return series


def run_replay(
    source: IO[str] | Iterable[str],
    config: DetectorConfig | None = None,
    labels: Sequence[GroundTruthLabel] | None = None,
    accuracy_window: int = DEFAULT_ACCURACY_WINDOW,
) -> SessionReport:
    """Feed a whole stream through one detector and collect everything.

    Parser and detector errors propagate; their messages already carry the
    stream position (line number or frame index).
    """
    _, frames = parse_landmark_stream(source)
    detector = Detector(config)
    events: list[DetectionEvent] = []
    rows: list[FrameAssessment] = []
    for frame in frames:
        assessment, frame_events = detector.process_frame(frame)
        rows.append(assessment)
        events.extend(frame_events)
    series = None
    if labels is not None:
        series = rolling_accuracy(rows, labels, accuracy_window)
    return SessionReport(
        summary=detector.finalize(),
        events=events,
        metrics_rows=rows,
        accuracy_series=series,
    )


def emit_plot_data(report: SessionReport, out_dir: str | Path) -> list[Path]:
    """Write the plottable artifacts: metrics.csv, plus accuracy.csv when labeled.

    Data files only, never images: any plotting tool can render them.
    Returns the paths written.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    accuracy = dict(report.accuracy_series) if report.accuracy_series is not None else None
    metrics_path = out / "metrics.csv"
    with open(metrics_path, "w", encoding="utf-8", newline="") as f:
        write_metrics_csv(report.metrics_rows, f, accuracy=accuracy)
    written.append(metrics_path)
    if report.accuracy_series is not None:
        accuracy_path = out / "accuracy.csv"
        with open(accuracy_path, "w", encoding="utf-8", newline="") as f:
            f.write(ACCURACY_CSV_HEADER + "\n")
            for frame_index, value in report.accuracy_series:
                f.write(f"{frame_index},{value:.4f}\n")
        written.append(accuracy_path)
    return written
