"""Command-line front end.

    vigil replay <file.vlm.jsonl> [--out DIR] [--labels FILE] [config flags]
    vigil live   [--out DIR] [--bell] [config flags]       (stream on stdin)
    vigil stats  <events.csv>

Every DetectorConfig field has a matching flag. The environment variable
VIGIL_CONFIG may name a key=value config file that is applied before flags.

Exit codes: 0 success, 2 bad arguments or configuration, 3 input parse or
detection-data error (the diagnostic names the offending line), 4 I/O error.
A nonzero exit always comes with a diagnostic on stderr; exit 0 never does.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from pathlib import Path
from typing import IO

from .detector import DetectionEvent, Detector, DetectorConfig, EventKind, SessionSummary
from .errors import InvalidConfigError, VigilError
from .session import emit_plot_data, load_labels, run_replay
from .stream_io import (
    CONFIG_KEYS,
    EVENT_CSV_HEADER,
    event_metric_fields,
    load_config,
    parse_landmark_stream,
    read_config_file,
    write_event_csv,
    write_metrics_csv,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_IO = 4

_ALERT_KINDS = (
    EventKind.BLINK,
    EventKind.DROWSINESS_ALERT,
    EventKind.YAWN_ALERT,
    EventKind.MISALIGNMENT_ALERT,
)


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("detector configuration")
    group.add_argument("--ear-threshold", type=float, dest="ear_threshold")
    group.add_argument("--drowsy-consec-frames", type=int, dest="drowsy_consec_frames")
    group.add_argument("--mar-threshold", type=float, dest="mar_threshold")
    group.add_argument(
        "--align-angle-threshold", type=float, dest="align_angle_threshold_deg"
    )
    group.add_argument("--face-lost-reset-frames", type=int, dest="face_lost_reset_frames")
    group.add_argument("--blink-min-frames", type=int, dest="blink_min_frames")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vigil", description="Drowsiness analysis over 68-point landmark streams."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    replay = sub.add_parser("replay", help="replay a recorded landmark stream file")
    replay.add_argument("input", help="path to a .vlm.jsonl landmark stream")
    replay.add_argument("--out", help="directory for events.csv/metrics.csv/accuracy.csv")
    replay.add_argument("--labels", help="ground-truth label CSV (frame_index,label)")
    replay.add_argument("--bell", action="store_true", help="terminal bell on drowsiness alerts")
    replay.add_argument("--quiet", action="store_true", help="suppress the summary printout")
    _add_config_flags(replay)

    live = sub.add_parser("live", help="consume a landmark stream from standard input")
    live.add_argument("--out", help="directory for events.csv/metrics.csv written at end")
    live.add_argument("--bell", action="store_true", help="terminal bell on drowsiness alerts")
    live.add_argument("--quiet", action="store_true", help="accepted for symmetry; live is quiet")
    _add_config_flags(live)

    stats = sub.add_parser("stats", help="summarize an events.csv log")
    stats.add_argument("events_csv", help="path to an events.csv produced by replay/live")

    return parser


def _resolve_config(args: argparse.Namespace) -> DetectorConfig:
    values: dict[str, object] = {}
    config_path = os.environ.get("VIGIL_CONFIG")
    if config_path:
        try:
            with open(config_path, "r", encoding="utf-8") as f:
                values.update(read_config_file(f))
        except OSError as exc:
            raise InvalidConfigError("VIGIL_CONFIG", f"cannot read {config_path!r}: {exc}") from exc
    for key in CONFIG_KEYS:
        flag_value = getattr(args, key, None)
        if flag_value is not None:
            values[key] = flag_value
    return load_config(values)


def _event_line(event: DetectionEvent) -> str:
    ear, mar, angle = event_metric_fields(event)

    def fmt(v: float | None) -> str:
        return "-" if v is None else f"{v:.4f}"

    return (
        f"EVENT {event.kind.value} frame={event.frame_index} t={event.timestamp_ms} "
        f"ear={fmt(ear)} mar={fmt(mar)} angle={fmt(angle)}"
    )


def _print_summary(summary: SessionSummary, out: IO[str]) -> None:
    counts = " ".join(f"{kind.value}={summary.event_counts[kind]}" for kind in EventKind)
    out.write(f"frames_seen: {summary.frames_seen}\n")
    out.write(f"blink_count: {summary.blink_count}\n")
    out.write(f"events: {counts}\n")


def _write_outputs(out_dir: str, events, report=None, rows=None, accuracy=None) -> None:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "events.csv", "w", encoding="utf-8", newline="") as f:
        write_event_csv(events, f)
    if report is not None:
        emit_plot_data(report, out)
    elif rows is not None:
        with open(out / "metrics.csv", "w", encoding="utf-8", newline="") as f:
            write_metrics_csv(rows, f, accuracy=accuracy)


def _cmd_replay(args: argparse.Namespace) -> int:
    config = _resolve_config(args)
    labels = None
    if args.labels:
        try:
            with open(args.labels, "r", encoding="utf-8", newline="") as f:
                labels = load_labels(f)
        except FileNotFoundError:
            print(f"vigil: no such labels file: {args.labels}", file=sys.stderr)
            return EXIT_PARSE
    try:
        stream = open(args.input, "r", encoding="utf-8")
    except FileNotFoundError:
        print(f"vigil: no such input: {args.input}", file=sys.stderr)
        return EXIT_PARSE
    with stream:
        report = run_replay(stream, config, labels)
    if args.bell:
        alerts = report.summary.event_counts[EventKind.DROWSINESS_ALERT]
        sys.stdout.write("\a" * alerts)
    if args.out:
        _write_outputs(args.out, report.events, report=report)
    if not args.quiet:
        _print_summary(report.summary, sys.stdout)
    return EXIT_OK


def _cmd_live(args: argparse.Namespace) -> int:
    config = _resolve_config(args)
    detector = Detector(config)
    events: list[DetectionEvent] = []
    rows = []
    _, frames = parse_landmark_stream(sys.stdin)
    try:
        for frame in frames:
            assessment, frame_events = detector.process_frame(frame)
            if args.out:
                rows.append(assessment)
                events.extend(frame_events)
            for event in frame_events:
                print(_event_line(event), flush=True)
                if args.bell and event.kind is EventKind.DROWSINESS_ALERT:
                    sys.stdout.write("\a")
                    sys.stdout.flush()
    except KeyboardInterrupt:
        pass
    finally:
        if args.out:
            _write_outputs(args.out, events, rows=rows)
    return EXIT_OK


def _cmd_stats(args: argparse.Namespace) -> int:
    try:
        f = open(args.events_csv, "r", encoding="utf-8", newline="")
    except FileNotFoundError:
        print(f"vigil: no such events file: {args.events_csv}", file=sys.stderr)
        return EXIT_PARSE
    counts = {kind: 0 for kind in EventKind}
    timestamps: list[int] = []
    with f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header != EVENT_CSV_HEADER.split(","):
            print(f"vigil: {args.events_csv} line 1: not an events.csv header", file=sys.stderr)
            return EXIT_PARSE
        for n, row in enumerate(reader, start=2):
            if len(row) != 7:
                print(f"vigil: {args.events_csv} line {n}: expected 7 fields", file=sys.stderr)
                return EXIT_PARSE
            try:
                timestamps.append(int(row[0]))
                kind = EventKind(row[2])
            except ValueError:
                print(
                    f"vigil: {args.events_csv} line {n}: bad timestamp or event_type",
                    file=sys.stderr,
                )
                return EXIT_PARSE
            counts[kind] += 1
    parts = [f"{kind.value}: {counts[kind]}" for kind in _ALERT_KINDS]
    for kind in (EventKind.FACE_LOST, EventKind.FACE_REACQUIRED):
        if counts[kind]:
            parts.append(f"{kind.value}: {counts[kind]}")
    print(", ".join(parts))
    duration_ms = (max(timestamps) - min(timestamps)) if len(timestamps) >= 2 else 0
    duration_s = duration_ms / 1000.0
    blinks = counts[EventKind.BLINK]
    rate = blinks / (duration_ms / 60000.0) if duration_ms > 0 else 0.0
    print(f"blink_rate_per_min: {rate:.4f}")
    print(f"session_duration_s: {duration_s:.4f}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "replay":
            return _cmd_replay(args)
        if args.command == "live":
            return _cmd_live(args)
        return _cmd_stats(args)
    except InvalidConfigError as exc:
        print(f"vigil: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except VigilError as exc:
        print(f"vigil: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BrokenPipeError:
        return EXIT_IO
    except OSError as exc:
        print(f"vigil: i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
