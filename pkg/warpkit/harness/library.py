"""Call registered operations by name with JSON arguments."""

import logging
from typing import Any

from pydantic import ValidationError

from warpkit.errors import WarpkitError
from warpkit.harness.models import OperationError
from warpkit.harness.registry import COMMANDS, Registry
from warpkit.harness.schema import FunctionDescription

logger = logging.getLogger(__name__)


def classify_exception(e: Exception) -> OperationError:
    """Bad input (schema, JSON, missing files, malformed domain input) is ``invalid``; the rest ``failed``."""
    if isinstance(e, ValidationError):
        return OperationError(
            error=f"Invalid arguments: {e}",
            kind="invalid",
            details={"validation_errors": e.errors(include_url=False, include_context=False)},
        )
    if isinstance(e, WarpkitError):
        return OperationError(
            error=e.message,
            kind="invalid" if e.invalid_input else "failed",
            details={"type": type(e).__name__, **e.details},
        )
    if isinstance(e, (ValueError, FileNotFoundError, IsADirectoryError)):
        return OperationError(error=f"Invalid input: {e}", kind="invalid", details={"type": type(e).__name__})
    return OperationError(error=f"Execution failed: {e}", kind="failed", details={"type": type(e).__name__})


class FunctionLibrary:
    """A set of operations callable by name; ``call`` never raises."""

    def __init__(
        self,
        function_descriptions: list[FunctionDescription] | None = None,
        registry: Registry | None = None,
    ):
        self.registry = registry or COMMANDS
        descriptions = function_descriptions if function_descriptions is not None else self.registry.functions
        self._function_descriptions = {d.name: d for d in descriptions}

    def get(self, name: str) -> FunctionDescription | None:
        return self._function_descriptions.get(name)

    def call(self, name: str, arguments: dict) -> Any:
        """Validate ``arguments`` against the operation's model and run it.

        Returns the operation's result, or an OperationError for unknown
        names, invalid arguments and failed runs.
        """
        logger.info(f"Calling {name} with arguments: {arguments}")
        func_desc = self._function_descriptions.get(name)
        if func_desc is None:
            error = f"Operation '{name}' not found"
            logger.error(error)
            return OperationError(error=error, kind="not_found")

        try:
            call_kwargs = func_desc.validate_and_parse_args(arguments)
        except Exception as e:
            result = classify_exception(e)
            logger.error(result.error)
            return result

        try:
            result = func_desc.function(**call_kwargs)
        except Exception as e:
            error = classify_exception(e)
            if error.kind == "failed" and not isinstance(e, WarpkitError):
                logger.exception(e)
            else:
                logger.error(f"{name}: {error.error}")
            return error
        logger.info(f"{name} completed")
        return result

    @property
    def function_descriptions(self) -> list[FunctionDescription]:
        return list(self._function_descriptions.values())

    def names(self) -> list[str]:
        return list(self._function_descriptions)
