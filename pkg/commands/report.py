import logging

import click

from commands.common import reports_errors, run_config, write_rows
from models.runs import Command, ReportRow
from services.scenarios import run_report

logger = logging.getLogger(__name__)


@click.command()
@reports_errors
def report() -> None:
    """Reference numbers next to their computed values and cross-checks."""
    cfg = run_config(Command.REPORT)
    logger.info("Building report")
    write_rows(run_report(), ReportRow, cfg.output)
