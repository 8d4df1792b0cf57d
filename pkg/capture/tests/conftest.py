from __future__ import annotations

import math
from pathlib import Path

import cv2
import numpy as np
import pytest

DATA_DIR = Path(__file__).parent / "data"
MODEL_PATH = (
    Path(__file__).parent.parent / "src" / "vigil_capture" / "models" / "mean_face_68.json"
)


@pytest.fixture
def sample_clip() -> Path:
    return DATA_DIR / "sample_face.avi"


@pytest.fixture
def template_model() -> Path:
    return MODEL_PATH


def write_clip(path: Path, frames: list[np.ndarray], fps: float = 30.0) -> Path:
    h, w = frames[0].shape[:2]
    writer = cv2.VideoWriter(str(path), cv2.VideoWriter_fourcc(*"MJPG"), fps, (w, h))
    assert writer.isOpened()
    for frame in frames:
        writer.write(frame)
    writer.release()
    return path


def blob_frame(centers_and_axes, size=(240, 320)) -> np.ndarray:
    """A dark frame with bright elliptical blobs at the given (cx, cy, ax, ay)."""
    frame = np.full((*size, 3), 20, np.uint8)
    for cx, cy, ax, ay in centers_and_axes:
        cv2.ellipse(frame, (cx, cy), (ax, ay), 0, 0, 360, (190, 210, 230), -1)
    return frame


@pytest.fixture
def empty_room_clip(tmp_path) -> Path:
    frames = [blob_frame([]) for _ in range(10)]
    return write_clip(tmp_path / "empty_room.avi", frames)


@pytest.fixture
def two_face_clip(tmp_path) -> Path:
    # A big blob on the left, a small one on the right, both fully visible.
    frames = [blob_frame([(90, 120, 50, 65), (250, 120, 20, 26)]) for _ in range(8)]
    return write_clip(tmp_path / "two_faces.avi", frames)


def simple_face_clip(tmp_path, n_frames=12, fps=30.0) -> Path:
    frames = [
        blob_frame([(160 + round(5 * math.sin(i)), 120, 55, 70)]) for i in range(n_frames)
    ]
    return write_clip(tmp_path / "face.avi", frames, fps=fps)
