"""Checks of the oscillatory-integral laws: trivial integrals, oracles, cutoff independence, iteration counts, intertwining."""

import logging
from typing import Any, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from tqdm import tqdm

from warpkit.experiments.checks import check
from warpkit.experiments.models import CheckResult, CheckTable
from warpkit.oscint.cutoff import CutoffSpec, eval_cutoff
from warpkit.oscint.distribution import evaluate, integrate_oscillated, oscillate_distribution
from warpkit.oscint.regularize import (
    InsufficientRegularizationError,
    RegularizationSpec,
    build_regularization,
    eval_regularized,
    required_iterations,
)
from warpkit.oscint.result import OscResult
from warpkit.symbolkit.extended import ExtendedSymbol, adaptive_profile_pairing
from warpkit.symbolkit.family import SymbolFamily
from warpkit.symbolkit.symbols import BilinearForm, Symbol
from warpkit.symbolkit.testfunction import TestFunction, XQuadratureSpec

logger = logging.getLogger(__name__)

Method = Literal["cutoff", "regularized"]


def relative_error(value: complex, expected: complex) -> float:
    return abs(value - expected) / abs(expected) if expected != 0 else abs(value)


def cutoff_for(k: int, depth: int | None = None) -> CutoffSpec:
    if depth is None:
        return CutoffSpec.for_dimension(k)
    return CutoffSpec.for_dimension(k, depth=depth, n_terms=max(depth + 1, CutoffSpec.for_dimension(k).n_terms))


class TrivialIntegralArgs(BaseModel):
    """Symbols independent of theta or of xi integrate to their value at the origin."""

    model_config = ConfigDict(extra="forbid")

    tolerance: float = Field(1e-4, gt=0, description="Relative error bound of the cutoff path")
    regularized_tolerance: float = Field(1e-3, gt=0, description="Relative error bound of the regularized path")
    methods: list[Method] = Field(default_factory=lambda: ["cutoff", "regularized"])
    k: list[int] = Field(default_factory=lambda: [1, 2], description="Dimensions of the family to run")
    min_members: int = Field(10, ge=1)
    progress: bool = False


@check
def prop38_suite(args: TrivialIntegralArgs) -> CheckResult:
    """Trivial-integral law over the standard family on both evaluation paths."""
    family = SymbolFamily([m for m in SymbolFamily.trivial() if m.k in args.k])
    result = CheckResult(
        table=CheckTable(columns=["symbol", "k", "method", "value_re", "value_im", "expected", "relative_error", "passed"])
    )
    status = result.status
    status.check(len(family) >= args.min_members, f"Family has {len(family)} members, need {args.min_members}")
    worst = {method: 0.0 for method in args.methods}
    for member in tqdm(family, desc="trivial integrals", disable=not args.progress):
        for method in args.methods:
            bound = args.tolerance if method == "cutoff" else args.regularized_tolerance
            value = evaluate(member.symbol, member.form, method, cutoff=cutoff_for(member.k)).value
            error = relative_error(value, member.expected)
            worst[method] = max(worst[method], error)
            passed = status.check(error <= bound, f"{member.label} ({method}): relative error {error:.3g} > {bound:g}")
            result.table.add(member.label, member.k, method, value.real, value.imag, member.expected.real, error, passed)
    result.metrics = {f"max_relative_error_{method}": worst[method] for method in args.methods}
    result.metrics["members"] = len(family)
    return result


class GaussianOracleArgs(BaseModel):
    model_config = ConfigDict(extra="forbid")

    tolerance: float = Field(1e-6, gt=0, description="Relative error bound")
    depth: int = Field(4, ge=4, description="Richardson depth")
    family: bool = Field(True, description="Also run the k = 1 members of the Gaussian family")


@check
def gaussian_oracle(args: GaussianOracleArgs) -> CheckResult:
    """e^{-theta^2 - xi^2} against 5^{-1/2}, and e^{-a theta^2 - b xi^2} against (1 + 4ab)^{-1/2}."""
    eta = BilinearForm.euclidean(1)
    cases = [("gauss", Symbol.from_expression({"gauss": {"over": "all"}}, 1, -10, 1, "gauss"), 5**-0.5)]
    if args.family:
        cases += [(m.label, m.symbol, m.expected) for m in SymbolFamily.gaussian().with_k(1)]
    result = CheckResult(table=CheckTable(columns=["symbol", "value", "expected", "relative_error", "error_estimate"]))
    spec = cutoff_for(1, args.depth)
    for label, symbol, expected in cases:
        osc = eval_cutoff(symbol, eta, spec)
        error = relative_error(osc.value, expected)
        result.status.check(error <= args.tolerance, f"{label}: relative error {error:.3g} > {args.tolerance:g}")
        result.table.add(label, osc.value.real, complex(expected).real, error, osc.error_estimate)
        if label == "gauss":
            result.metrics = {"value": osc.value.real, "relative_error": error}
    return result


class CutoffIndependenceArgs(BaseModel):
    model_config = ConfigDict(extra="forbid")

    tolerance: float = Field(1e-6, gt=0, description="Relative slack added to the combined error estimates")
    slack: float = Field(1.0, gt=0, description="Multiple of the combined error estimates")
    k: list[int] = Field(default_factory=lambda: [1, 2], description="Dimensions of the families to run")
    progress: bool = False


def _agree(a: OscResult, b: OscResult, slack: float, tolerance: float) -> bool:
    bound = slack * (a.error_estimate + b.error_estimate) + tolerance * max(1.0, abs(a.value))
    return abs(a.value - b.value) <= bound


@check
def cutoff_independence(args: CutoffIndependenceArgs) -> CheckResult:
    """Product and radial cutoff profiles give the same value on the trivial and Gaussian families."""
    members = [m for m in [*SymbolFamily.trivial(), *SymbolFamily.gaussian()] if m.k in args.k]
    result = CheckResult(table=CheckTable(columns=["symbol", "k", "product", "radial", "delta", "combined_error"]))
    worst = 0.0
    for member in tqdm(members, desc="cutoff profiles", disable=not args.progress):
        product = eval_cutoff(member.symbol, member.form, cutoff_for(member.k))
        radial = eval_cutoff(member.symbol, member.form, cutoff_for(member.k).model_copy(update={"profile": "radial"}))
        delta = abs(product.value - radial.value)
        worst = max(worst, delta)
        result.status.check(
            _agree(product, radial, args.slack, args.tolerance),
            f"{member.label}: profiles differ by {delta:.3g}",
        )
        result.table.add(
            member.label, member.k, product.value.real, radial.value.real, delta, product.error_estimate + radial.error_estimate
        )
    result.metrics = {"members": len(members), "max_delta": worst}
    return result


DEFAULT_TRIPLES = [
    (0.0, 1.0, 1),
    (0.0, 0.0, 1),
    (-3.0, 1.0, 1),
    (1.0, 0.5, 1),
    (-2.0, 0.0, 1),
    (2.0, 1.0, 1),
    (0.5, 0.5, 1),
    (-1.0, 0.5, 1),
    (0.0, 1.0, 2),
    (-5.0, 1.0, 2),
    (-2.0, 0.0, 2),
    (-4.0, 0.5, 2),
]


class IterationBoundArgs(BaseModel):
    model_config = ConfigDict(extra="forbid")

    triples: list[tuple[float, float, int]] = Field(default_factory=lambda: list(DEFAULT_TRIPLES), min_length=1)
    evaluate_k: list[int] = Field(default_factory=lambda: [1, 2], description="Dimensions whose symbols are evaluated")
    bulk_radius: dict[int, float] = Field(
        default_factory=lambda: {1: 16.0, 2: 3.0}, description="R of the first evaluation per k; the second uses 2R"
    )
    tolerance: float = Field(1e-6, gt=0, description="Relative slack of the R-doubling comparison")


def bracket_symbol(m: float, rho: float, k: int) -> Symbol:
    """(1 + |theta|^2 + |xi|^2)^{m/2}, declared in S^m_rho."""
    return Symbol.from_expression({"japanese": {"over": "all", "power": m}}, k, m, rho, f"<z>^{m:g}")


@check
def iteration_bound(args: IterationBoundArgs) -> CheckResult:
    """required_iterations is the least h > (m + 2k)/(rho + 1); h works and h - 1 is refused."""
    result = CheckResult(
        table=CheckTable(columns=["m", "rho", "k", "h", "bound", "value_R", "value_2R", "delta", "h_minus_one_refused"])
    )
    status = result.status
    for m, rho, k in args.triples:
        h = required_iterations(m, rho, k)
        bound = (m + 2 * k) / (rho + 1)
        status.check(h > bound and h - 1 <= bound, f"(m={m}, rho={rho}, k={k}): h={h} is not the least count above {bound:g}")
        eta = BilinearForm.euclidean(k)
        s = bracket_symbol(m, rho, k)
        refused = None
        if h > 0:
            try:
                build_regularization(s, eta, h=h - 1)
                refused = False
            except InsufficientRegularizationError:
                refused = True
            status.check(refused, f"(m={m}, rho={rho}, k={k}): h-1={h - 1} was accepted")
        values: list[complex | None] = [None, None]
        delta = None
        if k in args.evaluate_k:
            decomp = build_regularization(s, eta, h=h)
            radius = args.bulk_radius.get(k, RegularizationSpec().radius_for(k))
            near, far = (eval_regularized(decomp, eta, RegularizationSpec(bulk_radius=r)) for r in (radius, 2 * radius))
            values = [near.value, far.value]
            delta = abs(near.value - far.value)
            finite = bool(np.isfinite(near.value) and np.isfinite(far.value))
            stable = delta <= near.error_estimate + far.error_estimate + args.tolerance * max(1.0, abs(far.value))
            status.check(finite and stable, f"(m={m}, rho={rho}, k={k}): R-doubling moved the value by {delta:.3g}")
        result.table.add(
            m,
            rho,
            k,
            h,
            bound,
            None if values[0] is None else values[0].real,
            None if values[1] is None else values[1].real,
            delta,
            refused,
        )
    result.metrics = {"triples": len(args.triples)}
    return result


class IntertwinerCase(BaseModel):
    model_config = ConfigDict(extra="forbid")

    label: str
    symbol: dict[str, Any] = Field(description="Extended symbol config")
    test_function: dict[str, Any] = Field(description="{center, radius, mass} of a bump")
    base_value: float | None = Field(None, description="Closed-form I_eta of the base symbol of a separable case")


GAUSS_XI = {"gauss": {"over": "xi"}}
GAUSS_ALL = {"gauss": {"over": "all"}}

DEFAULT_CASES = [
    IntertwinerCase(
        label="quadratic_profile",
        symbol={"profile": {"sum": [1, {"pow": [{"var": ["x", 0]}, 2]}]}, "symbol": {"k": 1, "order": 0, "type": 0, "expr": GAUSS_XI}},
        test_function={"center": [0.1], "radius": 0.4},
        base_value=1.0,
    ),
    IntertwinerCase(
        label="inverse_sqrt_profile",
        symbol={
            "profile": {"abspow": {"index": 0, "center": 0.0, "exponent": -0.5}},
            "symbol": {"k": 1, "order": -10, "type": 1, "expr": GAUSS_ALL},
        },
        test_function={"center": [0.1], "radius": 0.4},
        base_value=5**-0.5,
    ),
    IntertwinerCase(
        label="heaviside_profile",
        symbol={
            "profile": {"heaviside": {"index": 0, "at": 0.0}},
            "symbol": {"k": 1, "order": -10, "type": 1, "expr": GAUSS_ALL},
        },
        test_function={"center": [0.0], "radius": 0.5, "mass": 1.0},
        base_value=5**-0.5,
    ),
    IntertwinerCase(
        label="plane_wave",
        symbol={
            "s": 1,
            "k": 1,
            "order": 0,
            "type": 0,
            "expr": {"prod": [{"iexp": {"prod": [{"var": ["x", 0]}, {"var": ["theta", 0]}]}}, GAUSS_XI]},
        },
        test_function={"center": [0.2], "radius": 0.3, "mass": 1.0},
    ),
    IntertwinerCase(
        label="xi_plane_wave",
        symbol={
            "s": 1,
            "k": 1,
            "order": -10,
            "type": 1,
            "expr": {"prod": [{"iexp": {"prod": [2, {"var": ["x", 0]}, {"var": ["xi", 0]}]}}, GAUSS_ALL]},
        },
        test_function={"center": [-0.2], "radius": 0.5},
    ),
]


class IntertwinerArgs(BaseModel):
    model_config = ConfigDict(extra="forbid")

    tolerance: float = Field(1e-6, gt=0, description="Relative agreement of the two orders")
    oracle_tolerance: float = Field(1e-3, gt=0, description="Relative agreement with base_value times int g f")
    cases: list[IntertwinerCase] = Field(default_factory=lambda: list(DEFAULT_CASES), min_length=1)
    x_quadrature: XQuadratureSpec = Field(
        default_factory=lambda: XQuadratureSpec(nodes_per_panel=6, base_panels=2, grading_levels=8)
    )
    cutoff: CutoffSpec = Field(default_factory=lambda: CutoffSpec(n_terms=4, depth=3, chunk_size=200_000))
    progress: bool = False


@check
def intertwiner(args: IntertwinerArgs) -> CheckResult:
    """Pair-then-oscillate equals oscillate-then-pair on the same x-nodes.

    The second order oscillates every fiber u(x) separately. Separable cases
    with a closed-form base value are also held against base_value * int g f.
    """
    eta = BilinearForm.euclidean(1)
    result = CheckResult(
        table=CheckTable(columns=["symbol", "paired_first", "oscillated_first", "relative_error", "oracle", "oracle_error"])
    )
    worst_oracle = 0.0
    for case in args.cases:
        u = ExtendedSymbol.from_config(case.symbol)
        f = TestFunction.bump(case.test_function["center"], float(case.test_function["radius"]), case.test_function.get("mass"))
        first = oscillate_distribution(u, f, eta, x_quadrature=args.x_quadrature, cutoff=args.cutoff)
        second = integrate_oscillated(
            u, f, eta, x_quadrature=args.x_quadrature, cutoff=args.cutoff, fiberwise=True, progress=args.progress
        )
        error = relative_error(second.value, first.value)
        result.status.check(error <= args.tolerance, f"{case.label}: orders differ by {error:.3g} relative")
        oracle = oracle_error = None
        if case.base_value is not None:
            oracle = case.base_value * adaptive_profile_pairing(u, f)
            oracle_error = relative_error(second.value, oracle)
            worst_oracle = max(worst_oracle, oracle_error)
            result.status.check(
                oracle_error <= args.oracle_tolerance,
                f"{case.label}: fiberwise value {second.value} is {oracle_error:.3g} off the closed form {oracle}",
            )
        result.table.add(case.label, str(first.value), str(second.value), error, None if oracle is None else str(oracle), oracle_error)
    result.metrics = {"cases": len(args.cases), "max_oracle_error": worst_oracle}
    return result
