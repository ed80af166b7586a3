"""n-point functions of the truncated free field and their oracles."""

from pathlib import Path
from typing import Any

import numpy as np
from pydantic import BaseModel, Field

from warpkit.commands.inputs import FockInput, load_test_function, read_document, write_result
from warpkit.fockfield.npoint import NPointResult, npoint, two_point_mode_sum, wick_four_point
from warpkit.fockfield.operators import build_field_operator, export_operator
from warpkit.harness import RunStatus, module_dir, read_help, register
from warpkit.jsonio import JsonComplex


class QftNpointArgs(BaseModel):
    """Arguments for qft npoint."""

    config: Path = Field(description="JSON input document")
    tolerance: float = Field(1e-10, gt=0, description="Relative tolerance of the oracle comparisons")
    out: Path | None = Field(None, description="Directory for qft_npoint.json and the field operators")


class QftNpointInput(FockInput):
    test_functions: list[dict[str, Any]] = Field(min_length=1)
    strict: bool = True
    translation: list[float] | None = Field(None, min_length=2, max_length=2)


class QftNpointResult(BaseModel):
    result: NPointResult
    oracle: JsonComplex | None = Field(None, description="Mode-sum (n = 2) or Wick (n = 4) value for the vacuum")
    translated: JsonComplex | None = None
    status: RunStatus


def _close(a: complex, b: complex, tolerance: float) -> bool:
    return abs(a - b) <= tolerance * max(1.0, abs(b))


@register(doc=read_help(module_dir(__file__) / "help.md"))
def qft_npoint(args: QftNpointArgs) -> QftNpointResult:
    """Compute a free-field n-point function."""
    doc = QftNpointInput.model_validate(read_document(args.config))
    basis = doc.basis()
    psi = doc.psi(basis)
    fs = [load_test_function(f) for f in doc.test_functions]
    operators = [build_field_operator(f, doc.lattice, basis) for f in fs]
    result = npoint(psi, fs, doc.lattice, basis, strict=doc.strict, operators=operators)
    status = RunStatus()
    if not result.exact:
        status.diagnostic("State lacks headroom below the cutoffs; the value is not exact")

    is_vacuum = bool(np.isclose(abs(psi[0]), 1.0, atol=1e-12))
    oracle = None
    if is_vacuum and len(fs) == 2:
        oracle = two_point_mode_sum(fs[0], fs[1], doc.lattice)
    elif is_vacuum and len(fs) == 4:
        oracle = wick_four_point(fs, doc.lattice)
    if oracle is not None:
        status.check(
            _close(result.value, oracle, args.tolerance),
            f"{len(fs)}-point value {result.value} differs from the oracle {oracle}",
        )

    translated = None
    if doc.translation is not None:
        moved = [f.translate(doc.translation) for f in fs]
        translated = npoint(psi, moved, doc.lattice, basis, strict=doc.strict).value
        if is_vacuum:
            status.check(
                _close(translated, result.value, max(args.tolerance, result.leakage)),
                f"Translated value {translated} differs from {result.value}",
            )

    out = QftNpointResult(result=result, oracle=oracle, translated=translated, status=status)
    if args.out is not None:
        write_result(args.out, "qft_npoint", out)
        for i, op in enumerate(operators):
            export_operator(op, Path(args.out) / f"field_{i}.bin")
    return out
