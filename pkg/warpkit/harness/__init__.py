"""Operation registry, library and CLI generation behind warpkit's commands and experiments."""

from warpkit.harness.cli import EXIT_FAILED, EXIT_INVALID, EXIT_OK, emit_result, generate_command
from warpkit.harness.help import module_dir, read_help
from warpkit.harness.library import FunctionLibrary, classify_exception
from warpkit.harness.models import OperationError, RunStatus, RunStatusType
from warpkit.harness.registry import COMMANDS, Registry, register
from warpkit.harness.schema import FunctionDescription

__all__ = [
    "COMMANDS",
    "EXIT_FAILED",
    "EXIT_INVALID",
    "EXIT_OK",
    "FunctionDescription",
    "FunctionLibrary",
    "OperationError",
    "Registry",
    "RunStatus",
    "RunStatusType",
    "classify_exception",
    "emit_result",
    "generate_command",
    "module_dir",
    "read_help",
    "register",
]
