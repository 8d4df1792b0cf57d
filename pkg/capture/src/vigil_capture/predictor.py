"""68-point landmark predictor backends, selected by model file extension.

.dat  -> dlib shape predictor (the usual production path; requires the
         dlib package and a trained shape_predictor_68_face_landmarks.dat).
.json -> template predictor: a luminance-threshold face localizer plus a
         68-point mean-shape template scaled into the detected box. It has
         no learned component, so it only suits controlled or synthetic
         footage (bright face region on a darker background) - which is
         exactly what CI exercises. Real footage should use the dlib path.

Both backends return every face candidate in a frame; the capture loop
picks the largest. Neither does any drowsiness logic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import cv2
import numpy as np

from .errors import ModelLoadFailureError

LANDMARK_COUNT = 68


@dataclass(frozen=True)
class FaceCandidate:
    bbox_area: float
    points: list[tuple[float, float]]  # 68 (x, y) image coordinates


class TemplatePredictor:
    """Threshold-localize the face region, then fit the template into its box."""

    def __init__(self, template: list[tuple[float, float]], min_luma: int, min_area_frac: float):
        self.template = template
        self.min_luma = min_luma
        self.min_area_frac = min_area_frac

    def detect(self, frame_bgr: np.ndarray) -> list[FaceCandidate]:
        gray = cv2.cvtColor(frame_bgr, cv2.COLOR_BGR2GRAY)
        mask = (gray >= self.min_luma).astype(np.uint8)
        count, labels, stats, _ = cv2.connectedComponentsWithStats(mask, connectivity=8)
        min_area = self.min_area_frac * gray.shape[0] * gray.shape[1]
        candidates = []
        for label in range(1, count):
            x, y, w, h, area = stats[label]
            if area < min_area or w < 4 or h < 4:
                continue
            points = [(x + u * w, y + v * h) for u, v in self.template]
            candidates.append(FaceCandidate(bbox_area=float(w) * float(h), points=points))
        return candidates


class DlibPredictor:
    def __init__(self, model_path: Path):
        try:
            import dlib
        except ImportError as exc:
            raise ModelLoadFailureError(
                f"cannot load {model_path}: the dlib package is not installed"
            ) from exc
        try:
            self._detector = dlib.get_frontal_face_detector()
            self._shape_predictor = dlib.shape_predictor(str(model_path))
        except Exception as exc:
            raise ModelLoadFailureError(f"cannot load {model_path}: {exc}") from exc

    def detect(self, frame_bgr: np.ndarray) -> list[FaceCandidate]:
        gray = cv2.cvtColor(frame_bgr, cv2.COLOR_BGR2GRAY)
        candidates = []
        for rect in self._detector(gray, 0):
            shape = self._shape_predictor(gray, rect)
            points = [(float(shape.part(i).x), float(shape.part(i).y)) for i in range(LANDMARK_COUNT)]
            area = float(rect.width()) * float(rect.height())
            candidates.append(FaceCandidate(bbox_area=area, points=points))
        return candidates


def _load_template(path: Path) -> TemplatePredictor:
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise ModelLoadFailureError(f"cannot load {path}: {exc}") from exc
    if payload.get("kind") != "template-68":
        raise ModelLoadFailureError(f"cannot load {path}: not a template-68 model")
    points = payload.get("points")
    if not isinstance(points, list) or len(points) != LANDMARK_COUNT:
        raise ModelLoadFailureError(f"cannot load {path}: expected {LANDMARK_COUNT} template points")
    template = [(float(u), float(v)) for u, v in points]
    return TemplatePredictor(
        template=template,
        min_luma=int(payload.get("min_luma", 140)),
        min_area_frac=float(payload.get("min_area_frac", 0.005)),
    )


def load_predictor(model_path: str | Path):
    """Load a predictor backend based on the model file's extension."""
    path = Path(model_path)
    if not path.exists():
        raise ModelLoadFailureError(f"cannot load {path}: no such file")
    suffix = path.suffix.lower()
    if suffix == ".dat":
        return DlibPredictor(path)
    if suffix == ".json":
        return _load_template(path)
    raise ModelLoadFailureError(f"cannot load {path}: unsupported model format {suffix!r}")
