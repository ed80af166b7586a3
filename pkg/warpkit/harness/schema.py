"""Argument models for registered operations."""

import inspect
from collections.abc import Callable
from typing import Any, get_type_hints

from pydantic import BaseModel, create_model


class FunctionDescription:
    """A registered function with a pydantic model validating its arguments."""

    function: Callable

    def __init__(self, func: Callable, doc: str | None = None):
        self.function = func
        self.name = func.__name__
        self.doc = (doc or func.__doc__ or f"Operation {func.__name__}").strip()
        self.args_model = self._create_args_model(func)
        self.json_schema = self.args_model.model_json_schema()

    @property
    def summary(self) -> str:
        """First non-empty line of the documentation."""
        return next((line.strip().lstrip("# ") for line in self.doc.splitlines() if line.strip()), "")

    def _single_model(self, func: Callable) -> tuple[str, type[BaseModel]] | None:
        sig = inspect.signature(func)
        if len(sig.parameters) != 1:
            return None
        hints = get_type_hints(func)
        name = next(iter(sig.parameters))
        param_type = hints.get(name, Any)
        if inspect.isclass(param_type) and issubclass(param_type, BaseModel):
            return name, param_type
        return None

    def _create_args_model(self, func: Callable) -> type[BaseModel]:
        """Use a lone pydantic parameter as-is; otherwise build a model from the signature."""
        single = self._single_model(func)
        if single is not None:
            return single[1]
        sig = inspect.signature(func)
        hints = get_type_hints(func)
        field_definitions = {}
        for param_name, param in sig.parameters.items():
            param_type = hints.get(param_name, Any)
            if param.default is not inspect.Parameter.empty:
                field_definitions[param_name] = (param_type, param.default)
            else:
                field_definitions[param_name] = (param_type, ...)
        model_name = f"{func.__name__.title().replace('_', '')}Args"
        return create_model(model_name, **field_definitions)

    def validate_and_parse_args(self, json_args: dict) -> dict:
        """Validate raw arguments; raises pydantic.ValidationError."""
        validated = self.args_model.model_validate(json_args)
        single = self._single_model(self.function)
        if single is not None:
            return {single[0]: validated}
        return {name: getattr(validated, name) for name in self.args_model.model_fields}

    def accepts(self, field: str) -> bool:
        return field in self.args_model.model_fields
