"""Shared exception types."""


class CapExceededError(ValueError):
    """An enumeration or search would exceed its configured size cap.

    Carries the computed (or bounding) size so callers can report it.
    """

    def __init__(self, message: str, size: int):
        super().__init__(message)
        self.size = size
