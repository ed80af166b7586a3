"""Evaluate I_eta on a symbol or a paired symbolic distribution."""

from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from warpkit.commands.inputs import Matrix, bilinear_form, load_test_function, read_document, write_result
from warpkit.harness import RunStatus, module_dir, read_help, register
from warpkit.jsonio import JsonComplex
from warpkit.oscint.cutoff import CutoffSpec
from warpkit.oscint.distribution import evaluate, integrate_oscillated, oscillate_distribution
from warpkit.oscint.regularize import RegularizationSpec
from warpkit.oscint.result import OscResult
from warpkit.symbolkit.extended import ExtendedSymbol
from warpkit.symbolkit.symbols import Symbol
from warpkit.symbolkit.testfunction import XQuadratureSpec

DEFAULT_TOLERANCE = {"cutoff": 1e-6, "regularized": 1e-3}


class OscintEvalArgs(BaseModel):
    """Arguments for oscint eval."""

    config: Path = Field(description="JSON input document")
    method: Literal["cutoff", "regularized"] = Field("cutoff", description="Evaluation path")
    tolerance: float | None = Field(None, gt=0, description="Relative tolerance against 'expected'")
    out: Path | None = Field(None, description="Directory for oscint_eval.json")


class OscintEvalInput(BaseModel):
    model_config = ConfigDict(extra="forbid")

    symbol: dict[str, Any] | None = None
    extended: dict[str, Any] | None = None
    test_function: dict[str, Any] | None = None
    order: Literal["pair-then-oscillate", "oscillate-then-pair"] = "pair-then-oscillate"
    fiberwise: bool = Field(False, description="Oscillate every fiber of a separable symbol separately")
    form: Matrix | None = None
    cutoff: CutoffSpec | None = None
    regularization: RegularizationSpec | None = None
    x_quadrature: XQuadratureSpec | None = None
    expected: JsonComplex | None = None

    @model_validator(mode="after")
    def _one_target(self):
        if (self.symbol is None) == (self.extended is None):
            raise ValueError("Give exactly one of 'symbol' or 'extended'")
        if self.extended is not None and self.test_function is None:
            raise ValueError("An extended symbol needs a 'test_function' to pair with")
        return self


class OscintEvalResult(BaseModel):
    label: str
    result: OscResult
    expected: JsonComplex | None = None
    relative_error: float | None = None
    status: RunStatus


def _evaluate(doc: OscintEvalInput, method) -> tuple[str, OscResult]:
    if doc.symbol is not None:
        s = Symbol.from_config(doc.symbol)
        eta = bilinear_form(doc.form, s.k)
        return s.label, evaluate(s, eta, method, cutoff=doc.cutoff, regularization=doc.regularization)
    u = ExtendedSymbol.from_config(doc.extended)
    f = load_test_function(doc.test_function)
    eta = bilinear_form(doc.form, u.k)
    options = dict(x_quadrature=doc.x_quadrature, cutoff=doc.cutoff, regularization=doc.regularization)
    if doc.order == "pair-then-oscillate":
        result = oscillate_distribution(u, f, eta, method, **options)
    else:
        result = integrate_oscillated(u, f, eta, method, fiberwise=doc.fiberwise, **options)
    return f"<{u.label}, {f.label}>", result


@register(doc=read_help(module_dir(__file__) / "help.md"))
def oscint_eval(args: OscintEvalArgs) -> OscintEvalResult:
    """Evaluate I_eta of a symbol or a symbolic distribution."""
    doc = OscintEvalInput.model_validate(read_document(args.config))
    label, result = _evaluate(doc, args.method)
    status = RunStatus()
    for note in result.diagnostics.notes:
        status.diagnostic(note)
    relative_error = None
    if doc.expected is not None:
        tolerance = args.tolerance or DEFAULT_TOLERANCE[args.method]
        delta = abs(result.value - doc.expected)
        relative_error = delta / abs(doc.expected) if doc.expected != 0 else delta
        status.check(
            relative_error <= tolerance,
            f"{label}: {result.value} differs from {doc.expected} by {relative_error:.3g} (relative, tolerance {tolerance:g})",
        )
    out = OscintEvalResult(
        label=label, result=result, expected=doc.expected, relative_error=relative_error, status=status
    )
    write_result(args.out, "oscint_eval", out)
    return out
