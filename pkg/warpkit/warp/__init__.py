"""Warped convolutions, deformation matrices and warped n-point distributions."""

from warpkit.warp.deformation import (
    ConditioningError,
    DeformationMatrix,
    LorentzElement,
    lorentz_transport,
    random_lorentz,
    sample_orbit,
)
from warpkit.warp.phases import (
    PhaseTerm,
    evaluate_phase_terms,
    numeric_phase_integral,
    phase_expansion,
    pure_phase_integral,
    restricted_phase_integral,
)
from warpkit.warp.resampling import (
    BoostResampling,
    CovarianceReport,
    boost_resampling,
    boost_unitary,
    covariance_report,
)
from warpkit.warp.warping import (
    AlternateFormReport,
    DomainInvarianceReport,
    KernelRestriction,
    WarpedNPointResult,
    WarpedNPointSpec,
    WarpSettings,
    WeakIntegrabilityReport,
    alternate_form_check,
    domain_invariance_report,
    kernel_restricted_warp,
    warp_operator,
    warped_npoint,
    warped_npoint_oracle,
    warped_symbol,
    weak_integrability_certificate,
)

__all__ = [
    "AlternateFormReport",
    "BoostResampling",
    "ConditioningError",
    "CovarianceReport",
    "DeformationMatrix",
    "DomainInvarianceReport",
    "KernelRestriction",
    "LorentzElement",
    "PhaseTerm",
    "WarpSettings",
    "WarpedNPointResult",
    "WarpedNPointSpec",
    "WeakIntegrabilityReport",
    "alternate_form_check",
    "boost_resampling",
    "boost_unitary",
    "covariance_report",
    "domain_invariance_report",
    "evaluate_phase_terms",
    "kernel_restricted_warp",
    "lorentz_transport",
    "numeric_phase_integral",
    "phase_expansion",
    "pure_phase_integral",
    "random_lorentz",
    "restricted_phase_integral",
    "sample_orbit",
    "warp_operator",
    "warped_npoint",
    "warped_npoint_oracle",
    "warped_symbol",
    "weak_integrability_certificate",
]
