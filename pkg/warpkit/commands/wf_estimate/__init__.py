from .lib import WfEstimateArgs, WfEstimateInput, WfEstimateResult, wf_estimate

__all__ = ["WfEstimateArgs", "WfEstimateInput", "WfEstimateResult", "wf_estimate"]
