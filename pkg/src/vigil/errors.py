"""Shared exception types."""


class VigilError(Exception):
    """Base class for every error this package raises on purpose."""


class InvalidConfigError(VigilError):
    """A detector configuration value is missing, unparseable, or out of range."""

    def __init__(self, key: str, reason: str):
        self.key = key
        self.reason = reason
        super().__init__(f"{key} {reason}")
