"""Registered acceptance checks, one per property the toolkit must exhibit."""

from functools import partial

from warpkit.harness.registry import Registry, register

CHECKS = Registry("check")

check = partial(register, registry=CHECKS)

# Importing the modules registers their checks.
from warpkit.experiments.checks import field, microlocal, musc, oscillatory  # noqa: E402, F401

__all__ = ["CHECKS", "check"]
