"""Landmark stream parsing/serialization, CSV logs, config loading.

The landmark stream (.vlm.jsonl) is line-delimited JSON, UTF-8, newline
"\\n". The first line is a header object:

    {"version":1,"source":"<free text>","fps_hint":<number|null>}

and each following line is one frame record:

    {"frame_index":<int>,"timestamp_ms":<int>,"points":[x0,y0,...,x67,y67]|null}

with exactly 136 finite numbers when points are present. Frames with no
detected face are explicit records with points null, so face-loss timing
is reconstructible from the stream alone. Coordinates are serialized with
6 fractional digits: sub-pixel precision beyond that is physically
meaningless, and a write/parse round trip stays within 1e-6 per coordinate.

Parsers and writers are single-consumer; give each thread its own.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import IO, Iterable, Iterator, Mapping

from .detector import DetectionEvent, DetectorConfig, EventKind, FrameAssessment
from .errors import InvalidConfigError, VigilError
from .geometry import Point2
from .landmarks import LANDMARK_COUNT, LandmarkFrame

STREAM_VERSION = 1

EVENT_CSV_HEADER = "timestamp_ms,frame_index,event_type,ear,mar,angle_deg,detail"
METRICS_CSV_HEADER = (
    "frame_index,timestamp_ms,face_present,ear,mar,angle_deg,state,rolling_accuracy"
)


class MalformedHeaderError(VigilError):
    """The first stream line is not a valid header."""


class MalformedRecordError(VigilError):
    """A stream record is structurally invalid."""

    def __init__(self, line_number: int, reason: str):
        self.line_number = line_number
        self.reason = reason
        super().__init__(f"line {line_number}: {reason}")


class NonMonotoneFrameIndexError(VigilError):
    """frame_index failed to strictly increase."""

    def __init__(self, line_number: int):
        self.line_number = line_number
        super().__init__(f"line {line_number}: frame_index does not increase")


@dataclass(frozen=True, slots=True)
class StreamHeader:
    version: int = STREAM_VERSION
    source: str = ""
    fps_hint: float | None = None


def _reject_json_constant(name: str):
    # json.loads would happily accept NaN/Infinity literals; the stream forbids them.
    raise ValueError(f"non-finite literal {name}")


def _parse_header(line: str) -> StreamHeader:
    try:
        obj = json.loads(line, parse_constant=_reject_json_constant)
    except ValueError as exc:
        raise MalformedHeaderError(f"header is not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise MalformedHeaderError("header must be a JSON object")
    version = obj.get("version")
    if version != STREAM_VERSION:
        raise MalformedHeaderError(f"unsupported version {version!r} (expected {STREAM_VERSION})")
    source = obj.get("source")
    if not isinstance(source, str):
        raise MalformedHeaderError("header source must be a string")
    fps_hint = obj.get("fps_hint")
    if fps_hint is not None:
        if isinstance(fps_hint, bool) or not isinstance(fps_hint, (int, float)):
            raise MalformedHeaderError("fps_hint must be a number or null")
        if not math.isfinite(fps_hint) or fps_hint <= 0:
            raise MalformedHeaderError(f"fps_hint must be positive, got {fps_hint}")
        fps_hint = float(fps_hint)
    return StreamHeader(version=version, source=source, fps_hint=fps_hint)


def _require_int(obj: dict, key: str, line_number: int) -> int:
    value = obj.get(key)
    if isinstance(value, bool) or not isinstance(value, int):
        raise MalformedRecordError(line_number, f"{key} must be an integer, got {value!r}")
    if value < 0:
        raise MalformedRecordError(line_number, f"{key} must be non-negative, got {value}")
    return value


def _parse_record(line: str, line_number: int) -> LandmarkFrame:
    try:
        obj = json.loads(line, parse_constant=_reject_json_constant)
    except ValueError as exc:
        raise MalformedRecordError(line_number, f"not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise MalformedRecordError(line_number, "record must be a JSON object")
    frame_index = _require_int(obj, "frame_index", line_number)
    timestamp_ms = _require_int(obj, "timestamp_ms", line_number)
    if "points" not in obj:
        raise MalformedRecordError(line_number, "missing points field")
    raw = obj["points"]
    if raw is None:
        return LandmarkFrame(frame_index, timestamp_ms, None)
    if not isinstance(raw, list):
        raise MalformedRecordError(line_number, "points must be a list or null")
    if len(raw) != 2 * LANDMARK_COUNT:
        raise MalformedRecordError(
            line_number, f"points must hold {2 * LANDMARK_COUNT} numbers, got {len(raw)}"
        )
    coords: list[float] = []
    for value in raw:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise MalformedRecordError(line_number, f"point coordinate {value!r} is not a number")
        value = float(value)
        # Overflowing literals like 1e999 decode to inf without going
        # through parse_constant, so finiteness needs its own check.
        if not math.isfinite(value):
            raise MalformedRecordError(line_number, "non-finite point coordinate")
        coords.append(value)
    points = tuple(Point2(coords[i], coords[i + 1]) for i in range(0, len(coords), 2))
    return LandmarkFrame(frame_index, timestamp_ms, points)


def parse_landmark_stream(
    source: IO[str] | Iterable[str],
) -> tuple[StreamHeader, Iterator[LandmarkFrame]]:
    """Parse a landmark stream; frames come back lazily, in file order.

    The header is read eagerly; the returned iterator yields one validated
    LandmarkFrame per record and enforces strictly increasing frame_index
    and non-decreasing timestamp_ms across the stream. Any structural
    problem aborts iteration with an error naming the offending line.
    """
    lines = iter(source)
    try:
        first = next(lines)
    except StopIteration:
        raise MalformedHeaderError("empty stream: missing header line") from None
    header = _parse_header(first)

    def frames() -> Iterator[LandmarkFrame]:
        prev_index: int | None = None
        prev_ts: int | None = None
        line_number = 1
        for line in lines:
            line_number += 1
            if line.strip() == "":
                raise MalformedRecordError(line_number, "blank line")
            frame = _parse_record(line, line_number)
            if prev_index is not None and frame.frame_index <= prev_index:
                raise NonMonotoneFrameIndexError(line_number)
            if prev_ts is not None and frame.timestamp_ms < prev_ts:
                raise MalformedRecordError(
                    line_number,
                    f"timestamp_ms decreased from {prev_ts} to {frame.timestamp_ms}",
                )
            prev_index = frame.frame_index
            prev_ts = frame.timestamp_ms
            yield frame

    return header, frames()


def write_landmark_stream(
    header: StreamHeader, frames: Iterable[LandmarkFrame], sink: IO[str]
) -> None:
    """Write the exact format parse_landmark_stream accepts."""
    head = {"version": header.version, "source": header.source, "fps_hint": header.fps_hint}
    sink.write(json.dumps(head, separators=(",", ":")) + "\n")
    for frame in frames:
        if frame.points is None:
            coords = None
        else:
            coords = []
            for p in frame.points:
                coords.append(round(p.x, 6))
                coords.append(round(p.y, 6))
        record = {
            "frame_index": frame.frame_index,
            "timestamp_ms": frame.timestamp_ms,
            "points": coords,
        }
        sink.write(json.dumps(record, separators=(",", ":")) + "\n")


def _fmt_metric(value: float | None) -> str:
    return "" if value is None else f"{value:.4f}"


def _quote_csv(text: str) -> str:
    return '"' + text.replace('"', '""') + '"'


# Which metric columns each event kind populates in the log: only the
# metric that triggered the event, so a log row reads as its own evidence.
_EVENT_COLUMNS: dict[EventKind, tuple[bool, bool, bool]] = {
    EventKind.BLINK: (True, False, False),
    EventKind.DROWSINESS_ALERT: (True, False, False),
    EventKind.YAWN_ALERT: (False, True, False),
    EventKind.MISALIGNMENT_ALERT: (False, False, True),
    EventKind.FACE_LOST: (False, False, False),
    EventKind.FACE_REACQUIRED: (False, False, False),
}


def event_metric_fields(event: DetectionEvent) -> tuple[float | None, float | None, float | None]:
    """The (ear, mar, angle_deg) values an event exposes in logs, None = blank."""
    want_ear, want_mar, want_angle = _EVENT_COLUMNS[event.kind]
    m = event.metrics
    if m is None:
        return None, None, None
    return (
        m.ear_mean if want_ear else None,
        m.mar if want_mar else None,
        m.angle_deg if want_angle else None,
    )


def write_event_csv(events: Iterable[DetectionEvent], sink: IO[str]) -> None:
    """One header row, then one row per event in input order (never sorted)."""
    sink.write(EVENT_CSV_HEADER + "\n")
    for event in events:
        ear, mar, angle = event_metric_fields(event)
        sink.write(
            f"{event.timestamp_ms},{event.frame_index},{event.kind.value},"
            f"{_fmt_metric(ear)},{_fmt_metric(mar)},{_fmt_metric(angle)},"
            f"{_quote_csv(event.detail)}\n"
        )


def write_metrics_csv(
    assessments: Iterable[FrameAssessment],
    sink: IO[str],
    accuracy: Mapping[int, float] | None = None,
) -> None:
    """The per-frame plottable timeseries; one row per frame.

    accuracy maps frame_index to a rolling accuracy value; rows without an
    entry (or an unlabeled session, accuracy None) leave the column empty.
    """
    sink.write(METRICS_CSV_HEADER + "\n")
    for a in assessments:
        m = a.metrics
        ear = _fmt_metric(m.ear_mean) if m is not None else ""
        mar = _fmt_metric(m.mar) if m is not None else ""
        angle = _fmt_metric(m.angle_deg) if m is not None else ""
        acc = ""
        if accuracy is not None and a.frame_index in accuracy:
            acc = f"{accuracy[a.frame_index]:.4f}"
        present = "true" if a.face_present else "false"
        sink.write(
            f"{a.frame_index},{a.timestamp_ms},{present},{ear},{mar},{angle},"
            f"{a.state_label.value},{acc}\n"
        )


_FLOAT_KEYS = ("ear_threshold", "mar_threshold", "align_angle_threshold_deg")
_INT_KEYS = ("drowsy_consec_frames", "face_lost_reset_frames", "blink_min_frames")
CONFIG_KEYS = _FLOAT_KEYS + _INT_KEYS


def _as_float(key: str, raw: object) -> float:
    if isinstance(raw, bool):
        raise InvalidConfigError(key, f"cannot parse {raw!r} as a number")
    if isinstance(raw, (int, float)):
        return float(raw)
    if isinstance(raw, str):
        try:
            return float(raw)
        except ValueError:
            raise InvalidConfigError(key, f"cannot parse {raw!r} as a number") from None
    raise InvalidConfigError(key, f"cannot parse {raw!r} as a number")


def _as_int(key: str, raw: object) -> int:
    if isinstance(raw, bool):
        raise InvalidConfigError(key, f"cannot parse {raw!r} as an integer")
    if isinstance(raw, int):
        return raw
    if isinstance(raw, float) and raw.is_integer():
        return int(raw)
    if isinstance(raw, str):
        try:
            return int(raw, 10)
        except ValueError:
            raise InvalidConfigError(key, f"cannot parse {raw!r} as an integer") from None
    raise InvalidConfigError(key, f"cannot parse {raw!r} as an integer")


def load_config(values: Mapping[str, object]) -> DetectorConfig:
    """Defaults overridden by the provided keys; anything out of range is rejected."""
    kwargs: dict[str, object] = {}
    for key, raw in values.items():
        if key in _FLOAT_KEYS:
            kwargs[key] = _as_float(key, raw)
        elif key in _INT_KEYS:
            kwargs[key] = _as_int(key, raw)
        else:
            raise InvalidConfigError(key, "unknown configuration key")
    return DetectorConfig(**kwargs)  # type: ignore[arg-type]


def read_config_file(lines: IO[str] | Iterable[str]) -> dict[str, str]:
    """Parse a key=value config file; '#' starts a comment, blank lines are skipped."""
    values: dict[str, str] = {}
    for n, line in enumerate(lines, start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise InvalidConfigError(f"line {n}", f"expected key=value, got {stripped!r}")
        key, _, value = stripped.partition("=")
        values[key.strip()] = value.strip()
    return values
