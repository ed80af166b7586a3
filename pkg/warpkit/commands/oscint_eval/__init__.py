from .lib import OscintEvalArgs, OscintEvalInput, OscintEvalResult, oscint_eval

__all__ = ["OscintEvalArgs", "OscintEvalInput", "OscintEvalResult", "oscint_eval"]
