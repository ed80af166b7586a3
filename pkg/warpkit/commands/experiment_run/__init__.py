from .lib import ExperimentRunArgs, experiment_run

__all__ = ["ExperimentRunArgs", "experiment_run"]
