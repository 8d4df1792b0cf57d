from __future__ import annotations

import io
from pathlib import Path

import pytest

from vigil.detector import Detector, DetectorConfig, FaceMetrics
from vigil.landmarks import LandmarkFrame
from vigil.stream_io import StreamHeader, write_landmark_stream

DATA_DIR = Path(__file__).parent / "data"

_pytest_config = None


def pytest_configure(config):
    global _pytest_config
    _pytest_config = config


def pytest_runtest_logreport(report):
    """One PASS/FAIL line per acceptance criterion."""
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    reporter = (
        _pytest_config.pluginmanager.get_plugin("terminalreporter") if _pytest_config else None
    )
    if reporter is None:
        return
    status = "PASS" if report.passed else "FAIL"
    name = report.nodeid.split("::")[-1]
    reporter.write_line(f"\n[ACCEPTANCE] {name}: {status}")


def metrics(ear: float, mar: float = 0.3, angle: float = 0.0) -> FaceMetrics:
    """FaceMetrics with both eyes at the same EAR."""
    return FaceMetrics(ear_left=ear, ear_right=ear, ear_mean=ear, mar=mar, angle_deg=angle)


def run_metric_sequence(seq, config: DetectorConfig | None = None):
    """Feed (ear, mar, angle) | None observations through a fresh detector.

    Returns (events, assessments, detector).
    """
    detector = Detector(config)
    events = []
    assessments = []
    for i, obs in enumerate(seq):
        m = None if obs is None else metrics(*obs)
        assessment, frame_events = detector.process_metrics(i, i * 33, m)
        assessments.append(assessment)
        events.extend(frame_events)
    return events, assessments, detector


def event_tuples(events) -> list[tuple[int, str]]:
    return [(e.frame_index, e.kind.value) for e in events]


def stream_text(header: StreamHeader, frames: list[LandmarkFrame]) -> str:
    buf = io.StringIO()
    write_landmark_stream(header, frames, buf)
    return buf.getvalue()


@pytest.fixture
def golden_stream_path() -> Path:
    return DATA_DIR / "golden.vlm.jsonl"


@pytest.fixture
def golden_events_path() -> Path:
    return DATA_DIR / "golden_events.csv"


@pytest.fixture
def golden_labels_path() -> Path:
    return DATA_DIR / "golden_labels.csv"
