"""Oscillatory integrals I_eta by cutoff extrapolation and by regularization."""

from warpkit.oscint.cutoff import CutoffSpec, eval_cutoff, mollifier
from warpkit.oscint.distribution import evaluate, integrate_oscillated, oscillate_distribution
from warpkit.oscint.regularize import (
    GeometryError,
    InsufficientRegularizationError,
    RegularizationSpec,
    RegularizedDecomposition,
    TruncationSequence,
    absolute_truncation_sequence,
    apply_m_to_phase,
    build_regularization,
    eval_regularized,
    regularize,
    required_iterations,
)
from warpkit.oscint.result import DivergenceError, OscDiagnostics, OscResult, extrapolate

__all__ = [
    "CutoffSpec",
    "DivergenceError",
    "GeometryError",
    "InsufficientRegularizationError",
    "OscDiagnostics",
    "OscResult",
    "RegularizationSpec",
    "RegularizedDecomposition",
    "TruncationSequence",
    "absolute_truncation_sequence",
    "apply_m_to_phase",
    "build_regularization",
    "eval_cutoff",
    "eval_regularized",
    "evaluate",
    "extrapolate",
    "integrate_oscillated",
    "mollifier",
    "oscillate_distribution",
    "regularize",
    "required_iterations",
]
