"""Registries of operations: CLI commands and experiment checks."""

import logging
from collections import OrderedDict
from collections.abc import Callable
from typing import ParamSpec, TypeVar, overload

from warpkit.harness.schema import FunctionDescription

logger = logging.getLogger(__name__)

P = ParamSpec("P")
T = TypeVar("T")


class Registry:
    """Ordered name -> FunctionDescription map."""

    def __init__(self, kind: str = "operation"):
        self.kind = kind
        self._functions: dict[str, FunctionDescription] = OrderedDict()

    def register(self, func: Callable, doc_override: str | None = None) -> None:
        name = func.__name__
        if name in self._functions:
            logger.debug(f"{self.kind} '{name}' already registered, keeping the first definition")
            return
        self._functions[name] = FunctionDescription(func, doc_override)
        logger.debug(f"Registered {self.kind}: {name}")

    @property
    def functions(self) -> list[FunctionDescription]:
        return list(self._functions.values())

    def get(self, name: str) -> FunctionDescription | None:
        return self._functions.get(name)

    def get_function(self, name: str) -> Callable:
        func_desc = self._functions.get(name)
        if func_desc is None:
            raise KeyError(f"{self.kind.capitalize()} '{name}' not found")
        return func_desc.function

    def names(self) -> list[str]:
        return list(self._functions.keys())

    def __contains__(self, name: str) -> bool:
        return name in self._functions

    def __len__(self) -> int:
        return len(self._functions)


# CLI commands, named <group>_<verb>
COMMANDS = Registry("command")


@overload
def register(
    func_or_doc: Callable[P, T], *, doc: str | None = None, name: str | None = None, registry: Registry | None = None
) -> Callable[P, T]: ...


@overload
def register(
    func_or_doc: str | None = None, *, doc: str | None = None, name: str | None = None, registry: Registry | None = None
) -> Callable[[Callable[P, T]], Callable[P, T]]: ...


def register(
    func_or_doc: Callable[P, T] | str | None = None,
    *,
    doc: str | None = None,
    name: str | None = None,
    registry: Registry | None = None,
) -> Callable[P, T] | Callable[[Callable[P, T]], Callable[P, T]]:
    """
    Register a function as an operation.

    Can be used with or without parentheses:
        @register
        def oscint_eval(args: OscintEvalArgs): ...

        @register(doc=read_help(module_dir(__file__) / "help.md"))
        def oscint_eval(args: OscintEvalArgs): ...

    Args:
        func_or_doc: Function (when used without parentheses) or doc override
        doc: Override docstring
        name: Override the registered name
        registry: Target registry (defaults to COMMANDS)
    """
    target = registry if registry is not None else COMMANDS

    def _register_func(func: Callable[P, T], doc_override: str | None = None) -> Callable[P, T]:
        if name:
            func.__name__ = name
        target.register(func, doc_override)
        return func

    if callable(func_or_doc):
        return _register_func(func_or_doc, doc)

    def decorator(func: Callable[P, T]) -> Callable[P, T]:
        doc_override = func_or_doc if isinstance(func_or_doc, str) else doc
        return _register_func(func, doc_override)

    return decorator
