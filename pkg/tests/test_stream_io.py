from __future__ import annotations

import io
import json

import pytest
from hypothesis import given, settings, strategies as st

from vigil.detector import DetectionEvent, DetectorConfig, EventKind, FrameAssessment, StateLabel
from vigil.errors import InvalidConfigError
from vigil.landmarks import LandmarkFrame, validate_frame
from vigil.stream_io import (
    EVENT_CSV_HEADER,
    METRICS_CSV_HEADER,
    MalformedHeaderError,
    MalformedRecordError,
    NonMonotoneFrameIndexError,
    StreamHeader,
    load_config,
    parse_landmark_stream,
    read_config_file,
    write_event_csv,
    write_landmark_stream,
    write_metrics_csv,
)
from vigil.synth import build_stream

from conftest import metrics, stream_text


def parse_all(text: str):
    header, frames = parse_landmark_stream(io.StringIO(text))
    return header, list(frames)


def record_line(frame_index=0, timestamp_ms=0, points="null"):
    return f'{{"frame_index":{frame_index},"timestamp_ms":{timestamp_ms},"points":{points}}}'

HEADER_LINE = '{"version":1,"source":"test","fps_hint":30}'
FLAT_68 = json.dumps([float(i) for i in range(136)])


class TestParser:
    def test_single_record_roundtrip(self):
        header, frames = parse_all(HEADER_LINE + "\n" + record_line(points=FLAT_68) + "\n")
        assert header == StreamHeader(1, "test", 30.0)
        assert len(frames) == 1
        assert frames[0].points[0].x == 0.0
        assert frames[0].points[67].y == 135.0

    def test_no_face_record(self):
        _, frames = parse_all(HEADER_LINE + "\n" + record_line() + "\n")
        assert frames[0].points is None

    def test_empty_stream(self):
        with pytest.raises(MalformedHeaderError):
            parse_all("")

    def test_bad_version(self):
        with pytest.raises(MalformedHeaderError):
            parse_all('{"version":2,"source":"x","fps_hint":null}\n')

    def test_header_not_json(self):
        with pytest.raises(MalformedHeaderError):
            parse_all("not json\n")

    def test_67_point_pairs_rejected(self):
        points = json.dumps([0.0] * 134)
        with pytest.raises(MalformedRecordError) as exc:
            parse_all(HEADER_LINE + "\n" + record_line(points=points) + "\n")
        assert exc.value.line_number == 2

    def test_repeated_frame_index(self):
        text = HEADER_LINE + "\n" + record_line(5, 0) + "\n" + record_line(5, 33) + "\n"
        with pytest.raises(NonMonotoneFrameIndexError) as exc:
            parse_all(text)
        assert exc.value.line_number == 3

    def test_decreasing_timestamp(self):
        text = HEADER_LINE + "\n" + record_line(0, 100) + "\n" + record_line(1, 99) + "\n"
        with pytest.raises(MalformedRecordError):
            parse_all(text)

    def test_nan_literal_rejected(self):
        points = "[" + ",".join(["NaN"] + ["0.0"] * 135) + "]"
        with pytest.raises(MalformedRecordError):
            parse_all(HEADER_LINE + "\n" + record_line(points=points) + "\n")

    def test_overflowing_float_rejected(self):
        # 1e999 decodes to inf without hitting parse_constant.
        points = "[" + ",".join(["1e999"] + ["0.0"] * 135) + "]"
        with pytest.raises(MalformedRecordError):
            parse_all(HEADER_LINE + "\n" + record_line(points=points) + "\n")

    def test_negative_frame_index_rejected(self):
        with pytest.raises(MalformedRecordError):
            parse_all(HEADER_LINE + "\n" + record_line(frame_index=-1) + "\n")

    def test_lazy_error_surfaces_at_offending_line(self):
        text = HEADER_LINE + "\n" + record_line(0) + "\n" + "garbage\n"
        _, frames = parse_landmark_stream(io.StringIO(text))
        assert next(frames).frame_index == 0
        with pytest.raises(MalformedRecordError) as exc:
            next(frames)
        assert exc.value.line_number == 3

    def test_yielded_frames_pass_validation(self):
        header, frames = build_stream([(0.3, 0.3, 0.0), None, (0.2, 0.7, 20.0)])
        _, parsed = parse_all(stream_text(header, frames))
        assert all(validate_frame(f) == [] for f in parsed)

    @settings(max_examples=300, deadline=None)
    @given(st.data())
    def test_mutated_streams_parse_valid_or_error(self, data):
        """Fuzz: corrupted input either errors cleanly or yields valid frames."""
        from vigil.errors import VigilError

        header, frames = build_stream([(0.3, 0.3, 0.0), None, (0.2, 0.7, 20.0)])
        text = stream_text(header, frames)
        mutation = data.draw(
            st.sampled_from(["replace", "delete", "insert_line", "dup_line", "swap", "truncate"])
        )
        if mutation == "replace":
            i = data.draw(st.integers(0, len(text) - 1))
            c = data.draw(st.sampled_from('0123456789eE+-.,:"[]{}n ulXé'))
            text = text[:i] + c + text[i + 1:]
        elif mutation == "delete":
            i = data.draw(st.integers(0, len(text) - 1))
            text = text[:i] + text[i + 1:]
        elif mutation == "insert_line":
            lines = text.splitlines(keepends=True)
            i = data.draw(st.integers(0, len(lines)))
            junk = data.draw(st.sampled_from(["{}\n", "null\n", '{"frame_index":9}\n', "\n"]))
            lines.insert(i, junk)
            text = "".join(lines)
        elif mutation == "dup_line":
            lines = text.splitlines(keepends=True)
            i = data.draw(st.integers(0, len(lines) - 1))
            lines.insert(i, lines[i])
            text = "".join(lines)
        elif mutation == "swap":
            lines = text.splitlines(keepends=True)
            i = data.draw(st.integers(0, len(lines) - 2))
            lines[i], lines[i + 1] = lines[i + 1], lines[i]
            text = "".join(lines)
        else:
            text = text[: data.draw(st.integers(0, len(text)))]
            if not text.endswith("\n"):
                text += "\n"
        try:
            _, parsed_frames = parse_landmark_stream(io.StringIO(text))
            parsed = list(parsed_frames)
        except VigilError:
            return
        last_index = -1
        for frame in parsed:
            assert validate_frame(frame) == []
            assert frame.frame_index > last_index
            last_index = frame.frame_index


class TestWriter:
    def test_empty_sequence_writes_header_only(self):
        text = stream_text(StreamHeader(source="s"), [])
        assert text == '{"version":1,"source":"s","fps_hint":null}\n'

    def test_no_face_frame_writes_null_points(self):
        text = stream_text(StreamHeader(), [LandmarkFrame(0, 0, None)])
        assert '"points":null' in text.splitlines()[1]

    def test_three_frame_roundtrip_exact_fields(self):
        header, frames = build_stream([(0.31, 0.4, 3.0), None, (0.12, 0.9, 40.0)], fps=25)
        reparsed_header, reparsed = parse_all(stream_text(header, frames))
        assert reparsed_header == header
        assert [f.frame_index for f in reparsed] == [f.frame_index for f in frames]
        assert [f.timestamp_ms for f in reparsed] == [f.timestamp_ms for f in frames]
        for original, copy in zip(frames, reparsed):
            if original.points is None:
                assert copy.points is None
                continue
            for p, q in zip(original.points, copy.points):
                assert abs(p.x - q.x) <= 1e-6
                assert abs(p.y - q.y) <= 1e-6

    coord = st.floats(min_value=-1e5, max_value=1e5, allow_nan=False, allow_infinity=False)

    @settings(max_examples=50, deadline=None)
    @given(
        st.lists(
            st.one_of(st.none(), st.tuples(coord, coord)),
            min_size=0,
            max_size=8,
        )
    )
    def test_roundtrip_property(self, rows):
        # Build frames from random seeds: each row is None (no face) or a
        # coordinate offset applied to a fixed 68-point template.
        frames = []
        for i, row in enumerate(rows):
            if row is None:
                frames.append(LandmarkFrame(i, i * 40, None))
            else:
                from vigil.geometry import Point2

                dx, dy = row
                pts = tuple(Point2(dx + j, dy - j) for j in range(68))
                frames.append(LandmarkFrame(i, i * 40, pts))
        header = StreamHeader(source="prop")
        _, reparsed = parse_all(stream_text(header, frames))
        assert len(reparsed) == len(frames)
        for original, copy in zip(frames, reparsed):
            assert (original.points is None) == (copy.points is None)
            if original.points is not None:
                for p, q in zip(original.points, copy.points):
                    assert abs(p.x - q.x) <= 1e-6 and abs(p.y - q.y) <= 1e-6


def blink_event(ts=400, frame=12, ear=0.1812, detail="recovered after 3 frames"):
    return DetectionEvent(
        EventKind.BLINK, frame, ts, metrics(ear), detail
    )


class TestEventCsv:
    def test_empty_events(self):
        buf = io.StringIO()
        write_event_csv([], buf)
        assert buf.getvalue() == EVENT_CSV_HEADER + "\n"

    def test_single_blink_row(self):
        buf = io.StringIO()
        write_event_csv([blink_event()], buf)
        assert buf.getvalue().splitlines()[1] == '400,12,BLINK,0.1812,,,"recovered after 3 frames"'

    def test_rows_preserve_input_order(self):
        later = blink_event(ts=900, frame=30)
        earlier = blink_event(ts=100, frame=2)
        buf = io.StringIO()
        write_event_csv([later, earlier], buf)
        lines = buf.getvalue().splitlines()
        assert lines[1].startswith("900,") and lines[2].startswith("100,")

    def test_row_count_is_events_plus_header(self):
        events = [blink_event(frame=i) for i in range(7)]
        buf = io.StringIO()
        write_event_csv(events, buf)
        assert len(buf.getvalue().splitlines()) == len(events) + 1

    def test_metric_column_per_kind(self):
        m = metrics(0.2, mar=0.8, angle=25.0)
        rows = {}
        for kind in EventKind:
            buf = io.StringIO()
            write_event_csv([DetectionEvent(kind, 1, 33, m, "d")], buf)
            rows[kind] = buf.getvalue().splitlines()[1].split(",")
        assert rows[EventKind.BLINK][3:6] == ["0.2000", "", ""]
        assert rows[EventKind.DROWSINESS_ALERT][3:6] == ["0.2000", "", ""]
        assert rows[EventKind.YAWN_ALERT][3:6] == ["", "0.8000", ""]
        assert rows[EventKind.MISALIGNMENT_ALERT][3:6] == ["", "", "25.0000"]
        assert rows[EventKind.FACE_REACQUIRED][3:6] == ["", "", ""]

    def test_detail_quotes_escaped(self):
        buf = io.StringIO()
        write_event_csv([blink_event(detail='say "hi"')], buf)
        assert '"say ""hi"""' in buf.getvalue()


class TestMetricsCsv:
    def test_empty(self):
        buf = io.StringIO()
        write_metrics_csv([], buf)
        assert buf.getvalue() == METRICS_CSV_HEADER + "\n"

    def test_no_face_row(self):
        row = FrameAssessment(0, 0, False, None, StateLabel.FACE_LOST)
        buf = io.StringIO()
        write_metrics_csv([row], buf)
        assert buf.getvalue().splitlines()[1] == "0,0,false,,,,FACE_LOST,"

    def test_labeled_row_has_accuracy(self):
        row = FrameAssessment(3, 99, True, metrics(0.3), StateLabel.ACTIVE)
        buf = io.StringIO()
        write_metrics_csv([row], buf, accuracy={3: 2 / 3})
        line = buf.getvalue().splitlines()[1]
        assert line == "3,99,true,0.3000,0.3000,0.0000,ACTIVE,0.6667"


class TestLoadConfig:
    def test_empty_source_gives_defaults(self):
        assert load_config({}) == DetectorConfig()

    def test_single_override(self):
        config = load_config({"ear_threshold": 0.3})
        assert config.ear_threshold == 0.3
        assert config.drowsy_consec_frames == DetectorConfig().drowsy_consec_frames

    def test_zero_consec_frames_rejected(self):
        with pytest.raises(InvalidConfigError):
            load_config({"drowsy_consec_frames": 0})

    def test_out_of_range_ear_rejected(self):
        with pytest.raises(InvalidConfigError) as exc:
            load_config({"ear_threshold": 1.5})
        assert "ear_threshold out of range" in str(exc.value)

    def test_angle_range(self):
        with pytest.raises(InvalidConfigError):
            load_config({"align_angle_threshold_deg": 90})
        assert load_config({"align_angle_threshold_deg": 89.9}).align_angle_threshold_deg == 89.9

    def test_unknown_key_rejected(self):
        with pytest.raises(InvalidConfigError):
            load_config({"earthreshold": 0.3})

    def test_string_values_parse(self):
        config = load_config({"ear_threshold": "0.22", "drowsy_consec_frames": "10"})
        assert (config.ear_threshold, config.drowsy_consec_frames) == (0.22, 10)

    def test_blink_min_must_stay_below_drowsy(self):
        with pytest.raises(InvalidConfigError):
            load_config({"blink_min_frames": 48})

    def test_config_file_parsing(self):
        text = "# comment\near_threshold = 0.2\n\nmar_threshold=0.7 # inline\n"
        values = read_config_file(io.StringIO(text))
        assert values == {"ear_threshold": "0.2", "mar_threshold": "0.7"}
        config = load_config(values)
        assert (config.ear_threshold, config.mar_threshold) == (0.2, 0.7)

    def test_config_file_bad_line(self):
        with pytest.raises(InvalidConfigError):
            read_config_file(io.StringIO("what is this\n"))
