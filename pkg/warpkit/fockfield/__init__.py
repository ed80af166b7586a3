"""Free massive scalar field in d = 2 on a truncated Fock space."""

from warpkit.fockfield.lattice import MINKOWSKI, FockBasis, ModeLattice
from warpkit.fockfield.npoint import (
    NPointResult,
    PositivityReport,
    SmoothnessReport,
    TruncationError,
    npoint,
    positivity_scan,
    smoothness_certificate,
    two_point_mode_sum,
    wick_four_point,
)
from warpkit.fockfield.operators import (
    FockOperator,
    annihilation,
    build_field_operator,
    creation,
    export_operator,
    load_operator,
    on_shell_transform,
    state_momenta,
    translation_unitary,
)
from warpkit.fockfield.twopoint import TwoPointGridSpec, vacuum_two_point_grid

__all__ = [
    "MINKOWSKI",
    "FockBasis",
    "FockOperator",
    "ModeLattice",
    "NPointResult",
    "PositivityReport",
    "SmoothnessReport",
    "TruncationError",
    "TwoPointGridSpec",
    "annihilation",
    "build_field_operator",
    "creation",
    "export_operator",
    "load_operator",
    "npoint",
    "on_shell_transform",
    "positivity_scan",
    "smoothness_certificate",
    "state_momenta",
    "translation_unitary",
    "two_point_mode_sum",
    "vacuum_two_point_grid",
    "wick_four_point",
]
