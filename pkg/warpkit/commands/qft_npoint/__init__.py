from .lib import QftNpointArgs, QftNpointInput, QftNpointResult, qft_npoint

__all__ = ["QftNpointArgs", "QftNpointInput", "QftNpointResult", "qft_npoint"]
