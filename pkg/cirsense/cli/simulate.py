"""Commands for simulating CIR record files from a scenario."""

import logging
from pathlib import Path

import click

from cirsense.io import write_cir_file
from cirsense.load.scenario import load_scenario
from cirsense.simulation.synth import synth_stream

from .util import OUTPUT_FILE, override_noise

LOG = logging.getLogger(__name__)


def simulation_options(func):
    """Options shared by the simulation commands."""
    options = [
        click.option(
            "-s",
            "--scenario",
            required=True,
            help="Scenario TOML file or name of a bundled scenario",
        ),
        click.option(
            "-o", "--output", type=OUTPUT_FILE, required=True, help="CIR record file to write"
        ),
        click.option(
            "-e",
            "--epochs",
            type=click.IntRange(min=1),
            default=300,
            show_default=True,
            help="Number of epochs",
        ),
        click.option("--snr-db", type=float, help="Direct path SNR in dB, inf for no noise"),
        click.option("--seed", type=click.IntRange(min=0), help="Noise seed"),
        click.option(
            "--precision",
            type=click.IntRange(1, 17),
            help="Significant digits per I/Q value",
        ),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _write_simulation(
    scenario: str,
    output: Path,
    epochs: int,
    snr_db: float | None,
    seed: int | None,
    precision: int | None,
    empty: bool,
) -> None:
    config = load_scenario(scenario)
    noise = None
    if config.simulation is not None:
        noise = override_noise(config.simulation.noise, snr_db, seed)
    stream = synth_stream(config, epochs, noise, empty=empty)
    write_cir_file(
        stream,
        output,
        k_taps=config.constants.k_taps,
        delta_t=config.constants.delta_t,
        precision=precision,
    )


@click.command()
@simulation_options
def simulate(
    scenario: str,
    output: Path,
    epochs: int,
    snr_db: float | None,
    seed: int | None,
    precision: int | None,
) -> None:
    """Simulate a measurement run with the scenario's vehicle parked."""
    _write_simulation(scenario, output, epochs, snr_db, seed, precision, empty=False)
    click.secho(f"Finished simulating {epochs} epochs to {output} ✔", fg="green")


@click.command()
@simulation_options
def calibrate(
    scenario: str,
    output: Path,
    epochs: int,
    snr_db: float | None,
    seed: int | None,
    precision: int | None,
) -> None:
    """Simulate a calibration run of the empty scene."""
    _write_simulation(scenario, output, epochs, snr_db, seed, precision, empty=True)
    click.secho(f"Finished simulating {epochs} calibration epochs to {output} ✔", fg="green")
