"""Checks of the truncated field: n-point oracles, warped-convolution laws and two-point rigidity."""

import logging

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from warpkit.experiments.checks import check
from warpkit.experiments.models import CheckResult, CheckTable
from warpkit.fockfield.lattice import FockBasis, ModeLattice
from warpkit.fockfield.npoint import npoint, positivity_scan, two_point_mode_sum, wick_four_point
from warpkit.fockfield.operators import FockOperator, build_field_operator, translation_unitary
from warpkit.symbolkit.testfunction import TestFunction
from warpkit.warp.deformation import DeformationMatrix, LorentzElement, sample_orbit
from warpkit.warp.resampling import covariance_report
from warpkit.warp.warping import (
    WarpedNPointSpec,
    alternate_form_check,
    kernel_restricted_warp,
    warp_operator,
    warped_npoint,
    warped_npoint_oracle,
)

logger = logging.getLogger(__name__)

BUMPS = [
    ([0.0, 0.0], 1.0),
    ([0.3, -0.2], 0.8),
    ([-0.5, 0.4], 0.6),
    ([0.1, 0.7], 0.9),
]


class FockSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    lattice: ModeLattice = Field(default_factory=ModeLattice)
    n_max: int = Field(2, ge=1)
    n_total: int = Field(4, ge=4, description="Room for four field operators on the vacuum")

    def basis(self) -> FockBasis:
        return FockBasis.for_lattice(self.lattice, self.n_max, self.n_total)


def bumps() -> list[TestFunction]:
    return [TestFunction.bump(center, radius) for center, radius in BUMPS]


def scaled(tolerance: float, reference: complex) -> float:
    return tolerance * max(1.0, abs(reference))


class FieldNPointArgs(BaseModel):
    model_config = ConfigDict(extra="forbid")

    fock: FockSettings = Field(default_factory=FockSettings)
    tolerance: float = Field(1e-10, gt=0, description="Oracle tolerance, relative to max(1, |oracle|)")
    translation: tuple[float, float] = (0.5, 0.3)
    translation_tolerance: float = Field(1e-8, gt=0, description="Quadrature tolerance of translation covariance")
    n_polynomials: int = Field(10, ge=1)
    seed: int = 0


@check
def field_npoints(args: FieldNPointArgs) -> CheckResult:
    """Vacuum two- and four-point functions against the mode sum and Wick's rule, translation covariance and positivity."""
    lattice, basis = args.fock.lattice, args.fock.basis()
    fs = bumps()
    omega = basis.vacuum()
    result = CheckResult(table=CheckTable(columns=["quantity", "value", "reference", "delta", "bound"]))
    status = result.status

    def compare(name: str, value: complex, reference: complex, bound: float) -> None:
        delta = abs(value - reference)
        status.check(delta <= bound, f"{name}: {value} differs from {reference} by {delta:.3g}")
        result.table.add(name, str(complex(value)), str(complex(reference)), delta, bound)

    two = npoint(omega, fs[:2], lattice, basis)
    mode_sum = two_point_mode_sum(fs[0], fs[1], lattice)
    compare("two_point", two.value, mode_sum, scaled(args.tolerance, mode_sum))
    four = npoint(omega, fs, lattice, basis)
    wick = wick_four_point(fs, lattice)
    compare("four_point", four.value, wick, scaled(args.tolerance, wick))
    status.check(two.exact and four.exact, "Vacuum lacks headroom for four field operators")

    a = np.array(args.translation)
    moved = npoint(omega, [f.translate(a) for f in fs[:2]], lattice, basis)
    compare("translated_two_point", moved.value, two.value, args.translation_tolerance)
    phi = build_field_operator(fs[1], lattice, basis)
    u, u_inv = translation_unitary(a, lattice, basis), translation_unitary(-a, lattice, basis)
    conjugated = (u @ phi @ u_inv).matrix
    direct = build_field_operator(fs[1].translate(a), lattice, basis).matrix
    covariance = float(np.max(np.abs(conjugated - direct)))
    compare("translation_covariance", covariance, 0.0, args.translation_tolerance + phi.leakage)

    positivity = positivity_scan(lattice, basis, n_polynomials=args.n_polynomials, seed=args.seed)
    status.check(positivity.passed, f"Positivity scan reached {positivity.minimum:.3g}")
    result.metrics = {
        "two_point_delta": abs(two.value - mode_sum),
        "four_point_delta": abs(four.value - wick),
        "translation_covariance": covariance,
        "positivity_minimum": positivity.minimum,
    }
    return result


class WarpLawArgs(BaseModel):
    model_config = ConfigDict(extra="forbid")

    fock: FockSettings = Field(default_factory=FockSettings)
    q: float = Field(0.9, description="Parameter of [[0, q], [q, 0]]")
    tolerance: float = Field(1e-10, gt=0, description="Bound of the vacuum, adjoint and alternate-form laws")
    zero_tolerance: float = Field(0.0, ge=0, description="Bound of W_0[A] - A on the closed-form path")
    rapidity: float = Field(0.05, description="Boost of the covariance law; small enough for a bijective resampling")
    translation: tuple[float, float] = (0.1, 0.0)
    seed: int = 0


@check
def warp_laws(args: WarpLawArgs) -> CheckResult:
    """W_0[A] = A, W_Q[A] Omega = A Omega, adjoints, the alternate form, kernel restriction and covariance."""
    lattice, basis = args.fock.lattice, args.fock.basis()
    q = DeformationMatrix.two_dimensional(args.q)
    phi = build_field_operator(TestFunction.bump([0.0, 0.0], 1.0), lattice, basis)
    a = build_field_operator(TestFunction.bump([0.2, 0.1], 0.8) * (1 - 0.5j), lattice, basis)
    result = CheckResult(table=CheckTable(columns=["law", "discrepancy", "bound", "passed"]))
    status = result.status

    def law(name: str, discrepancy: float, bound: float) -> None:
        passed = status.check(discrepancy <= bound, f"{name}: discrepancy {discrepancy:.3g} above {bound:.3g}")
        result.table.add(name, discrepancy, bound, passed)

    def max_delta(x: FockOperator, y: FockOperator) -> float:
        return float(np.max(np.abs(x.matrix - y.matrix)))

    law("zero_deformation", max_delta(warp_operator(phi, DeformationMatrix.zero(2), lattice, basis), phi), args.zero_tolerance)
    warped = warp_operator(phi, q, lattice, basis).matrix
    law("vacuum_column", float(np.max(np.abs(warped[:, 0] - phi.matrix[:, 0]))), args.tolerance)
    law(
        "adjoint",
        max_delta(warp_operator(a, q, lattice, basis).adjoint(), warp_operator(a.adjoint(), q, lattice, basis)),
        args.tolerance,
    )
    law("alternate_form", alternate_form_check(phi, q, lattice, basis, seed=args.seed).discrepancy, args.tolerance)
    restricted, restriction = kernel_restricted_warp(phi, q, lattice, basis)
    law(
        "kernel_restriction",
        float(np.max(np.abs(restricted.matrix - restriction.constant * warped))),
        args.tolerance * max(1.0, float(np.max(np.abs(warped)))),
    )
    covariance = covariance_report(
        phi, q, lattice, basis, translation=list(args.translation), boost=LorentzElement.boost(args.rapidity)
    )
    law("covariance", covariance.discrepancy, covariance.tolerance)
    result.metrics = {"resampling_error": covariance.resampling_error, "kernel_constant": restriction.constant}
    return result


class RigidityArgs(BaseModel):
    model_config = ConfigDict(extra="forbid")

    fock: FockSettings = Field(default_factory=FockSettings)
    n_pairs: int = Field(5, ge=1)
    q_range: float = Field(3.0, gt=0, description="Deformation parameters are drawn from [-q_range, q_range]")
    tolerance: float = Field(1e-4, gt=0, description="Relative bound of warped minus undeformed two-point values")
    four_point_q: float = Field(2.0, description="Generic deformation of the four-point comparison")
    oracle_tolerance: float = Field(1e-10, gt=0, description="Combined tolerance of the four-point comparison")
    separation: float = Field(10.0, gt=1, description="Required multiple of the combined tolerance")
    seed: int = 0


@check
def twopoint_rigidity(args: RigidityArgs) -> CheckResult:
    """Warped vacuum two-point functions do not see Q; four-point functions do and match the phase expansion."""
    lattice, basis = args.fock.lattice, args.fock.basis()
    fs = bumps()
    omega = basis.vacuum()
    rng = np.random.default_rng(args.seed)
    plain = npoint(omega, fs[:2], lattice, basis).value
    result = CheckResult(table=CheckTable(columns=["q1", "q2", "warped", "undeformed", "relative_delta"]))
    status = result.status
    worst = 0.0
    for n in range(args.n_pairs):
        q1, q2 = (
            sample_orbit(DeformationMatrix.two_dimensional(float(rng.uniform(-args.q_range, args.q_range))), 1, seed=args.seed + n)[0]
            for _ in range(2)
        )
        value = warped_npoint(WarpedNPointSpec(omega, ((q1, fs[0]), (q2, fs[1]))), lattice, basis).value
        delta = abs(value - plain) / abs(plain)
        worst = max(worst, delta)
        status.check(delta <= args.tolerance, f"Pair {n}: warped two-point moved by {delta:.3g} relative")
        result.table.add(float(q1.matrix[0, 1]), float(q2.matrix[0, 1]), str(value), str(plain), delta)

    q = DeformationMatrix.two_dimensional(args.four_point_q)
    plain4 = npoint(omega, fs, lattice, basis).value
    spec = WarpedNPointSpec(omega, tuple((q, f) for f in fs))
    warped4 = warped_npoint(spec, lattice, basis).value
    oracle = warped_npoint_oracle(spec, lattice, basis)
    combined = scaled(args.oracle_tolerance, oracle)
    status.check(abs(warped4 - oracle) <= combined, f"Warped four-point {warped4} misses the phase expansion {oracle}")
    status.check(
        abs(warped4 - plain4) > args.separation * combined,
        f"Warped four-point differs from the undeformed one by only {abs(warped4 - plain4):.3g}",
    )
    result.metrics = {
        "max_two_point_delta": worst,
        "four_point_deformation": abs(warped4 - plain4),
        "four_point_oracle_delta": abs(warped4 - oracle),
    }
    return result
