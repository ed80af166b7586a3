"""warpkit - oscillatory integrals, warped convolutions and microlocal checks at desk scale."""

__version__ = "0.1.0"
