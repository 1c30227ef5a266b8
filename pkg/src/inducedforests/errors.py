"""Exception raised when a request is beyond an exact-computation cap."""


class CapExceededError(ValueError):
    """Raised instead of silently switching to an approximation or heuristic."""
