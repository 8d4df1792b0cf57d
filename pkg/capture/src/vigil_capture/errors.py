class CaptureError(Exception):
    """Base class for capture failures."""


class SourceUnavailableError(CaptureError):
    """The video file or camera cannot be opened."""


class ModelLoadFailureError(CaptureError):
    """The landmark predictor model cannot be loaded."""
