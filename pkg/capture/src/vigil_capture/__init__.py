"""Video-to-landmark-stream capture for the vigil analysis engine."""

from .capture import CaptureConfig, capture
from .errors import CaptureError, ModelLoadFailureError, SourceUnavailableError
from .predictor import load_predictor

__version__ = "0.1.0"

__all__ = [
    "CaptureConfig",
    "CaptureError",
    "ModelLoadFailureError",
    "SourceUnavailableError",
    "capture",
    "load_predictor",
]
