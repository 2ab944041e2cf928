"""Cirsense command line interface."""

import logging
import sys
from os import getenv

import click

from cirsense.__version__ import VERSION as version
from cirsense.exceptions import ConfigurationError, DataError, InvalidParameterError

from .detect import detect as detect_command
from .detect import evaluate as evaluate_command
from .detect import heatmap as heatmap_command
from .simulate import calibrate as calibrate_command
from .simulate import simulate as simulate_command

log_level = getenv("LOG_LEVEL", "INFO").upper()
logging.basicConfig(
    level=log_level, format="[%(asctime)s] %(levelname)s in %(module)s: %(message)s"
)
LOG = logging.getLogger(__name__)

EXIT_USAGE = 1
EXIT_DATA = 2


class CirsenseGroup(click.Group):
    """Command group translating errors into exit codes.

    Usage and configuration errors exit with 1, data errors with 2.
    """

    def main(self, *args, standalone_mode: bool = True, **kwargs):  # type: ignore[override]
        if not standalone_mode:
            return super().main(*args, standalone_mode=False, **kwargs)
        try:
            result = super().main(*args, standalone_mode=False, **kwargs)
        except click.ClickException as err:
            err.show()
            sys.exit(EXIT_USAGE)
        except click.Abort:
            click.secho("Aborted!", fg="red", err=True)
            sys.exit(EXIT_USAGE)
        except (ConfigurationError, InvalidParameterError) as err:
            click.secho(f"Error: {err}", fg="red", err=True)
            sys.exit(EXIT_USAGE)
        except DataError as err:
            click.secho(f"Error: {err}", fg="red", err=True)
            sys.exit(EXIT_DATA)
        sys.exit(result if isinstance(result, int) else 0)


@click.group(cls=CirsenseGroup)
@click.version_option(version)
def cli() -> None:
    """Multipath assisted parking occupancy detection from UWB CIRs"""


cli.add_command(simulate_command)
cli.add_command(calibrate_command)
cli.add_command(detect_command)
cli.add_command(evaluate_command)
cli.add_command(heatmap_command)
