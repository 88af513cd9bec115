"""Exceptions shared across modules."""


class ResourceExceeded(RuntimeError):
    """A configured cap was hit.  Never a claim that the object is infinite."""

    def __init__(self, message: str, high_water: int):
        super().__init__(f"{message} (high-water mark {high_water})")
        self.high_water = high_water
