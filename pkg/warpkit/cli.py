"""warpkit command line: one group per command prefix, ``warpkit <group> <verb>``."""

import logging

import click

import warpkit.commands  # noqa: F401
from warpkit import __version__
from warpkit.harness import COMMANDS, generate_command

GROUP_HELP = {
    "experiment": "Acceptance experiments.",
    "musc": "Microlocal spectrum condition.",
    "oscint": "Oscillatory integrals.",
    "qft": "Free-field n-point functions.",
    "symbol": "Symbol classes and seminorms.",
    "warp": "Warped convolutions.",
    "wf": "Numerical wavefront sets.",
}


@click.group()
@click.version_option(__version__, prog_name="warpkit")
@click.option("-v", "--verbose", count=True, help="-v for info logs, -vv for debug")
def cli(verbose: int):
    """Oscillatory integrals, warped convolutions and microlocal checks."""
    level = logging.WARNING if verbose == 0 else logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def build_cli() -> click.Group:
    for desc in COMMANDS.functions:
        group_name, verb = desc.name.split("_", 1)
        group = cli.commands.get(group_name)
        if group is None:
            group = click.Group(group_name, help=GROUP_HELP.get(group_name))
            cli.add_command(group)
        group.add_command(generate_command(desc, verb))
    return cli


build_cli()


def main():
    cli()


if __name__ == "__main__":
    main()
