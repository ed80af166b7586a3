"""Result and error models shared by registered operations."""

from enum import Enum
from typing import Any, Literal

from pydantic import BaseModel, Field

ErrorKind = Literal["not_found", "invalid", "failed"]


class OperationError(BaseModel):
    """Error response from an operation.

    ``kind`` separates bad input (``invalid``) from a run that broke
    (``failed``); the CLI maps them to exit codes 2 and 1.
    """

    error: str
    kind: ErrorKind = "failed"
    details: dict[str, Any] | None = None


class RunStatusType(str, Enum):
    PASSED = "PASSED"
    FAILED = "FAILED"


class RunStatus(BaseModel):
    status: RunStatusType = RunStatusType.PASSED
    errors: list[str] = Field(default_factory=list)
    diagnostics: list[str] = Field(default_factory=list)

    def error(self, msg: str) -> None:
        """Add an error message and mark the run as failed."""
        self.status = RunStatusType.FAILED
        self.errors.append(msg)

    def diagnostic(self, msg: str) -> None:
        self.diagnostics.append(msg)

    def check(self, condition: bool, msg: str) -> bool:
        """Record ``msg`` as an error unless ``condition`` holds."""
        if not condition:
            self.error(msg)
        return condition

    def is_passed(self) -> bool:
        return self.status == RunStatusType.PASSED

    def summary(self) -> str:
        if self.is_passed():
            return "PASSED"
        errors_text = "\n".join(f"- {error}" for error in self.errors)
        return f"FAILED\n{errors_text}"
