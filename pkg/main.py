"""
spacelike: numerical toolkit for spacelike propagation of massive particles
and its waveguide (evanescent-mode) analogue.

Subcommands ``report``, ``propagator``, ``window``, ``waveguide`` and
``nearfield`` write CSV or JSON rows to standard output or ``--output``.
A ``--config`` scenario file supplies defaults for any long flag; flags given
on the command line win.
"""

import logging
from pathlib import Path
from typing import Optional

import click
from click.core import ParameterSource

from commands import COMMANDS
from models.runs import OutputFormat, OutputSpec
from settings import get_settings, load_scenario

logger = logging.getLogger(__name__)

# scenario keys read by the group itself rather than by a subcommand
GROUP_SCENARIO_KEYS = frozenset({"format", "output"})


def _from_default(ctx: click.Context, name: str) -> bool:
    return ctx.get_parameter_source(name) is ParameterSource.DEFAULT


def _scenario_defaults(
    command: click.Command, scenario: dict[str, str]
) -> dict[str, str]:
    """Map flag-named scenario keys (``omega-rad-s``) onto the command's parameter names."""
    defaults = {}
    for param in command.params:
        for opt in param.opts:
            key = opt.lstrip("-")
            if key in scenario:
                defaults[param.name] = scenario[key]
    return defaults


def _warn_unknown_keys(command: click.Command, scenario: dict[str, str]) -> None:
    known = {opt.lstrip("-") for param in command.params for opt in param.opts}
    for key in sorted(set(scenario) - known - GROUP_SCENARIO_KEYS):
        logger.warning(
            f"Scenario key '{key}' matches no option of '{command.name}'; ignored"
        )


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option(
    "--output",
    type=click.Path(dir_okay=False, writable=True, path_type=Path),
    default=None,
    help="Write rows to this file instead of standard output.",
)
@click.option(
    "--format",
    "fmt",
    type=click.Choice([f.value for f in OutputFormat]),
    default=OutputFormat.CSV.value,
    show_default=True,
)
@click.option(
    "--config",
    "config_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    default=None,
    help="Scenario file of `flag-name = value` lines.",
)
@click.pass_context
def cli(
    ctx: click.Context, output: Optional[Path], fmt: str, config_path: Optional[Path]
) -> None:
    settings = get_settings()
    logging.basicConfig(
        level=settings.log_level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )
    logger.debug(f"Environment: {settings.ENVIRONMENT}")

    scenario = load_scenario(config_path) if config_path else {}
    if _from_default(ctx, "fmt") and "format" in scenario:
        fmt = scenario["format"]
    if _from_default(ctx, "output") and "output" in scenario:
        output = Path(scenario["output"])
    try:
        output_format = OutputFormat(fmt)
    except ValueError:
        raise click.UsageError(f"unknown output format '{fmt}' (use csv or json)")

    invoked = cli.commands.get(ctx.invoked_subcommand or "")
    if invoked is not None:
        _warn_unknown_keys(invoked, scenario)
    ctx.default_map = {
        name: _scenario_defaults(command, scenario)
        for name, command in cli.commands.items()
    }
    ctx.obj = OutputSpec(format=output_format, path=output)


for _command in COMMANDS:
    cli.add_command(_command)


if __name__ == "__main__":
    cli()
