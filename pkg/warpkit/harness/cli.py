"""Click command generation from operation argument models."""

import json
import logging
import types
from pathlib import Path
from typing import Any, Literal, Union, get_args, get_origin

import click
from rich.console import Console

from warpkit import jsonio
from warpkit.harness.library import FunctionLibrary
from warpkit.harness.models import OperationError, RunStatus
from warpkit.harness.schema import FunctionDescription

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2

console = Console(stderr=True)


class CliOption:
    """Represents a CLI option configuration."""

    def __init__(
        self,
        name: str,
        param_name: str,
        click_type: Any,
        help_text: str,
        is_flag: bool = False,
        multiple: bool = False,
        default: Any = None,
    ):
        self.name = name
        self.param_name = param_name
        self.click_type = click_type
        self.help_text = help_text
        self.is_flag = is_flag
        self.multiple = multiple
        self.default = default


def _unwrap_optional(annotation: Any) -> Any:
    if get_origin(annotation) in (Union, types.UnionType):
        members = [a for a in get_args(annotation) if a is not type(None)]
        if len(members) == 1:
            return members[0]
    return annotation


def click_type_for(annotation: Any) -> Any | None:
    """Click parameter type for a field annotation; None when only --json can carry it."""
    annotation = _unwrap_optional(annotation)
    if get_origin(annotation) is Literal:
        return click.Choice([str(v) for v in get_args(annotation)])
    if annotation in (int, float, str):
        return annotation
    if annotation is Path:
        return click.Path(path_type=Path)
    return None


def create_click_option(option: CliOption):
    """Create a Click option decorator from a CliOption configuration."""
    if option.is_flag:
        dashed = option.name[2:]
        return click.option(
            f"{option.name}/--no-{dashed}", option.param_name, default=option.default, help=option.help_text
        )
    if option.multiple:
        return click.option(
            option.name,
            option.param_name,
            type=option.click_type,
            multiple=True,
            help=f"{option.help_text} (can be specified multiple times)",
        )
    return click.option(option.name, option.param_name, type=option.click_type, help=option.help_text)


def collect_function_options(func_desc: FunctionDescription) -> list[CliOption]:
    """One option per argument-model field that a command line can express."""
    options = []
    for field_name, field_info in func_desc.args_model.model_fields.items():
        annotation = _unwrap_optional(field_info.annotation)
        option_name = f"--{field_name.replace('_', '-')}"
        help_text = field_info.description or f"Value for {field_name}"
        if annotation is bool:
            default = field_info.default if isinstance(field_info.default, bool) else False
            options.append(CliOption(option_name, field_name, bool, help_text, is_flag=True, default=default))
            continue
        if get_origin(annotation) is list:
            (item,) = get_args(annotation) or (str,)
            click_type = click_type_for(item)
            if click_type is not None:
                options.append(CliOption(option_name, field_name, click_type, help_text, multiple=True))
            continue
        click_type = click_type_for(annotation)
        if click_type is None:
            logger.debug(f"{func_desc.name}: field {field_name} is only settable through --json")
            continue
        options.append(CliOption(option_name, field_name, click_type, help_text))
    return options


def parse_cli_arguments(kwargs: dict[str, Any], options: list[CliOption]) -> dict[str, Any]:
    """Keep the options the user actually set."""
    args_dict = {}
    for option in options:
        value = kwargs.get(option.param_name)
        if value is None:
            continue
        if option.multiple:
            if not value:
                continue
            value = list(value)
        args_dict[option.param_name] = value
    return args_dict


def emit_result(result: Any) -> int:
    """Write the result as JSON on stdout, a summary on stderr, and return the exit code."""
    if isinstance(result, OperationError):
        click.echo(jsonio.dumps(result))
        console.print(f"[red]{result.error}[/red]")
        return EXIT_INVALID if result.kind in ("invalid", "not_found") else EXIT_FAILED
    click.echo(jsonio.dumps(result))
    status = getattr(result, "status", None)
    if isinstance(status, RunStatus):
        if status.is_passed():
            console.print("[green]PASSED[/green]")
            return EXIT_OK
        console.print(f"[red]{status.summary()}[/red]")
        return EXIT_FAILED
    return EXIT_OK


def generate_command(func_desc: FunctionDescription, name: str | None = None) -> click.Command:
    """Generate a Click command that validates its options against the operation's model."""
    options = collect_function_options(func_desc)

    @click.command(name=name or func_desc.name, help=func_desc.doc, short_help=func_desc.summary)
    @click.option("--json", "json_input", help="JSON object holding all arguments")
    @click.pass_context
    def command(ctx: click.Context, json_input: str | None, **kwargs):
        if json_input:
            try:
                args_dict = json.loads(json_input)
            except json.JSONDecodeError as e:
                ctx.exit(emit_result(OperationError(error=f"Invalid JSON: {e}", kind="invalid")))
                return
            if not isinstance(args_dict, dict):
                ctx.exit(emit_result(OperationError(error="--json must hold an object", kind="invalid")))
                return
        else:
            args_dict = parse_cli_arguments(kwargs, options)
        result = FunctionLibrary([func_desc]).call(func_desc.name, args_dict)
        ctx.exit(emit_result(result))

    for option in options:
        command = create_click_option(option)(command)

    return command
