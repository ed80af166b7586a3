"""I_eta on symbolic distributions: oscillate the paired symbol, or pair the oscillated fibers."""

import logging
from typing import Literal

import numpy as np
from tqdm import tqdm

from warpkit.oscint.cutoff import CutoffSpec, eval_cutoff
from warpkit.oscint.regularize import RegularizationSpec, regularize
from warpkit.oscint.result import ROUNDOFF, OscDiagnostics, OscResult
from warpkit.symbolkit.extended import ExtendedSymbol, pair_symbolic_distribution, pairing_quadrature
from warpkit.symbolkit.symbols import BilinearForm, Symbol
from warpkit.symbolkit.testfunction import TestFunction, XQuadratureSpec

logger = logging.getLogger(__name__)

Method = Literal["cutoff", "regularized"]


def evaluate(
    s: Symbol,
    eta: BilinearForm,
    method: Method = "cutoff",
    *,
    cutoff: CutoffSpec | None = None,
    regularization: RegularizationSpec | None = None,
) -> OscResult:
    """Dispatch to eval_cutoff or the regularized path."""
    if method == "cutoff":
        return eval_cutoff(s, eta, cutoff)
    if method == "regularized":
        return regularize(s, eta, regularization)
    raise ValueError(f"Unknown method: {method}")


def _zero(method: Method) -> OscResult:
    return OscResult(value=0j, error_estimate=0.0, method=method)


def oscillate_distribution(
    u: ExtendedSymbol,
    f: TestFunction,
    eta: BilinearForm,
    method: Method = "cutoff",
    *,
    x_quadrature: XQuadratureSpec | None = None,
    cutoff: CutoffSpec | None = None,
    regularization: RegularizationSpec | None = None,
) -> OscResult:
    """I_eta(<u, f>): pair first, then evaluate the oscillatory integral once."""
    if f.radius == 0:
        return _zero(method)
    paired = pair_symbolic_distribution(u, f, x_quadrature)
    return evaluate(paired, eta, method, cutoff=cutoff, regularization=regularization)


def integrate_oscillated(
    u: ExtendedSymbol,
    f: TestFunction,
    eta: BilinearForm,
    method: Method = "cutoff",
    *,
    x_quadrature: XQuadratureSpec | None = None,
    cutoff: CutoffSpec | None = None,
    regularization: RegularizationSpec | None = None,
    fiberwise: bool = False,
    progress: bool = False,
) -> OscResult:
    """int I_eta(u(x)) f(x) dx on the same x-nodes that pairing uses.

    A separable u = g(x) s is oscillated once and scaled by int g f unless
    ``fiberwise`` asks for one oscillatory integral per x-node.
    """
    if f.radius == 0:
        return _zero(method)
    nodes, fw = pairing_quadrature(u, f, x_quadrature)
    if u.is_separable and not fiberwise:
        c = complex(np.sum(fw * u.profile(nodes)))
        inner = evaluate(u.base, eta, method, cutoff=cutoff, regularization=regularization)
        diagnostics = inner.diagnostics.model_copy(update={"notes": [*inner.diagnostics.notes, f"profile pairing {c}"]})
        return OscResult(
            value=c * inner.value,
            error_estimate=abs(c) * inner.error_estimate,
            method=method,
            converged=inner.converged,
            diagnostics=diagnostics,
        )

    total = 0j
    error = 0.0
    converged = True
    notes = []
    for x, w in tqdm(list(zip(nodes, fw, strict=True)), desc="fibers", disable=not progress, leave=False):
        inner = evaluate(u.fiber(x), eta, method, cutoff=cutoff, regularization=regularization)
        total += w * inner.value
        error += abs(w) * inner.error_estimate
        converged &= inner.converged
        notes.extend(inner.diagnostics.notes)
    logger.info(f"Integrated {len(nodes)} oscillated fibers of {u.label}: {total}")
    return OscResult(
        value=total,
        error_estimate=error + ROUNDOFF * max(1.0, abs(total)),
        method=method,
        converged=converged,
        diagnostics=OscDiagnostics(notes=sorted(set(notes))),
    )
