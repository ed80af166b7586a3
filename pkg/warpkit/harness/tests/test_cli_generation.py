"""Tests for CLI generation, help includes and exit codes."""

import json
import tempfile
from pathlib import Path
from typing import Literal

import pytest
from click.testing import CliRunner
from pydantic import BaseModel, Field

from warpkit.harness.cli import EXIT_FAILED, EXIT_INVALID, EXIT_OK, generate_command
from warpkit.harness.help import read_help
from warpkit.harness.models import RunStatus
from warpkit.harness.schema import FunctionDescription


class SimpleArgs(BaseModel):
    """Simple test arguments."""

    name: str
    count: int = Field(5, ge=0, description="How many")
    mode: Literal["fast", "slow"] = "fast"
    flag: bool = False
    values: list[float] = Field(default_factory=list)
    nested: dict[str, int] = Field(default_factory=dict)


class StatusResult(BaseModel):
    status: RunStatus


def simple_tool(args: SimpleArgs) -> dict:
    """A simple test tool."""
    return {"name": args.name, "count": args.count, "mode": args.mode, "flag": args.flag, "values": args.values, "nested": args.nested}


def status_tool(args: SimpleArgs) -> StatusResult:
    """Fails when flag is set."""
    status = RunStatus()
    status.check(not args.flag, "flag was set")
    return StatusResult(status=status)


def crashing_tool(args: SimpleArgs) -> dict:
    raise RuntimeError("boom")


def invoke(func, argv):
    return CliRunner().invoke(generate_command(FunctionDescription(func)), argv)


class TestGenerateCommand:
    def test_options(self):
        result = invoke(simple_tool, ["--name", "a", "--count", "2", "--mode", "slow", "--flag", "--values", "1.5", "--values", "2"])
        assert result.exit_code == EXIT_OK
        assert json.loads(result.stdout) == {"name": "a", "count": 2, "mode": "slow", "flag": True, "values": [1.5, 2.0], "nested": {}}

    def test_json_input_reaches_nested_fields(self):
        result = invoke(simple_tool, ["--json", json.dumps({"name": "j", "nested": {"a": 1}})])
        assert result.exit_code == EXIT_OK
        assert json.loads(result.stdout)["nested"] == {"a": 1}

    def test_nested_field_has_no_option(self):
        result = invoke(simple_tool, ["--name", "a", "--nested", "x"])
        assert result.exit_code != EXIT_OK

    @pytest.mark.parametrize(
        "argv",
        [["--count", "1"], ["--name", "a", "--count", "-1"], ["--json", "{not json"], ["--json", "[1, 2]"]],
    )
    def test_invalid_input_exits_2(self, argv):
        result = invoke(simple_tool, argv)
        assert result.exit_code == EXIT_INVALID
        assert "error" in json.loads(result.stdout)

    def test_failed_status_exits_1(self):
        assert invoke(status_tool, ["--name", "a"]).exit_code == EXIT_OK
        assert invoke(status_tool, ["--name", "a", "--flag"]).exit_code == EXIT_FAILED

    def test_crash_exits_1(self):
        result = invoke(crashing_tool, ["--name", "a"])
        assert result.exit_code == EXIT_FAILED
        assert json.loads(result.stdout)["kind"] == "failed"


class TestReadHelp:
    def test_include_expansion(self):
        with tempfile.TemporaryDirectory() as tmp:
            root = Path(tmp)
            (root / "cmd").mkdir()
            (root / "shared.md").write_text("Shared flags.\n")
            (root / "cmd" / "help.md").write_text("Command.\n\n{{include: ../shared.md}}\n")
            assert read_help(root / "cmd" / "help.md") == "Command.\n\nShared flags.\n"

    def test_circular_include(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "help.md"
            path.write_text("{{include: ./help.md}}")
            with pytest.raises(ValueError, match="Circular include"):
                read_help(path)
