"""Utility functions and classes for click commands."""

from pathlib import Path

import click

from cirsense.models.simulation import NoiseSpec

INPUT_FILE = click.Path(exists=True, dir_okay=False, path_type=Path)
OUTPUT_FILE = click.Path(dir_okay=False, writable=True, path_type=Path)


class ChoiceType(click.Choice):
    """Custom input type for click that returns an enum member."""

    name = "choice"

    def __init__(self, enum):
        super().__init__(list(map(str, enum)))
        self.enum = enum

    def convert(self, value: str, param, ctx):
        """Convert str to the enum member"""

        value = super().convert(value, param, ctx)
        return next(v for v in self.enum if str(v) == value)


def override_noise(noise: NoiseSpec, snr_db: float | None, seed: int | None) -> NoiseSpec:
    """Replace the scenario's noise settings with the ones given on the command line."""
    update = {}
    if snr_db is not None:
        update["snr_db"] = snr_db
    if seed is not None:
        update["seed"] = seed
    return noise.model_copy(update=update)
