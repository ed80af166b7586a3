"""CLI commands; importing this package registers them in COMMANDS."""

from warpkit.commands import (  # noqa: F401
    experiment_run,
    musc_check,
    oscint_eval,
    qft_npoint,
    symbol_check,
    warp_npoint,
    wf_estimate,
)
