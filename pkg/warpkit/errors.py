"""Exception base shared by every warpkit module."""

from typing import Any, ClassVar


class WarpkitError(Exception):
    """Base class for domain errors raised by warpkit.

    Subclasses live next to the code that raises them. ``details`` carries
    structured context that the harness copies into error reports.
    Subclasses that reject malformed input set ``invalid_input``.
    """

    invalid_input: ClassVar[bool] = False

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self) -> dict[str, Any]:
        return {"error": self.message, "type": type(self).__name__, "details": self.details}
