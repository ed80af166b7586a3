from .lib import WarpNpointArgs, WarpNpointInput, WarpNpointResult, warp_npoint

__all__ = ["WarpNpointArgs", "WarpNpointInput", "WarpNpointResult", "warp_npoint"]
