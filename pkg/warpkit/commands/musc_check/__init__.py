from .lib import MuscCheckArgs, MuscCheckInput, MuscCheckResult, musc_check

__all__ = ["MuscCheckArgs", "MuscCheckInput", "MuscCheckResult", "musc_check"]
