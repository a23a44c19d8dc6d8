"""Exception hierarchy shared by every module."""

from __future__ import annotations


class InputError(ValueError):
    """Rejected input: bad dimensions, out-of-range indices, malformed data."""


class SingularMatrix(InputError):
    """Raised when inverting a matrix whose determinant is zero."""

    def __init__(self, det=0):
        super().__init__(f"matrix is singular (det = {det})")
        self.det = det


class RangeError(InputError):
    """An operator power was requested beyond an element's usable range."""

    def __init__(self, required: int, available: int, what: str = "element"):
        super().__init__(
            f"{what} needs usable range {required}, only {available} available"
        )
        self.required = required
        self.available = available


class InternalConsistencyError(RuntimeError):
    """A computed result failed its own post-verification."""
