"""Definition of fixtures and test data."""

from __future__ import annotations

import math
from pathlib import Path
from typing import Callable, Sequence

import numpy as np
import pytest

from cirsense.constants import DEFAULT_DELTA_T
from cirsense.io import write_cir_file
from cirsense.load.scenario import load_scenario
from cirsense.models.cir import Cir, MagnitudeProfile
from cirsense.models.filtering import SubtractedProfile
from cirsense.models.geometry import Rect, SiteGeometry
from cirsense.models.scenario import ScenarioConfig
from cirsense.models.simulation import NoiseSpec
from cirsense.simulation.synth import synth_stream


@pytest.fixture()
def make_profile() -> Callable[..., MagnitudeProfile]:
    """Build a magnitude profile from plain values."""

    def _make(values: Sequence[float], delta_t: float = DEFAULT_DELTA_T, **kwargs):
        return MagnitudeProfile(values=np.asarray(values, dtype=float), delta_t=delta_t, **kwargs)

    return _make


@pytest.fixture()
def make_subtracted() -> Callable[..., SubtractedProfile]:
    """Build a subtracted profile with a single residual peak."""

    def _make(
        k_taps: int = 128,
        leading_edge: int = 20,
        peaks: dict[int, float] | None = None,
        delta_t: float = DEFAULT_DELTA_T,
    ) -> SubtractedProfile:
        values = np.zeros(k_taps)
        for tap, amplitude in (peaks or {}).items():
            values[tap] = amplitude
        return SubtractedProfile(values=values, delta_t=delta_t, leading_edge=leading_edge)

    return _make


@pytest.fixture()
def side_geometry() -> SiteGeometry:
    """Anchors 3.2 m apart in front of three lots behind each other."""
    return SiteGeometry(
        tx=(0.0, 0.0),
        rx=(3.2, 0.0),
        lots={
            "P1": Rect(x_min=-0.9, y_min=0.0, x_max=4.1, y_max=2.75),
            "P2": Rect(x_min=-0.9, y_min=2.75, x_max=4.1, y_max=5.5),
            "P3": Rect(x_min=-0.9, y_min=5.5, x_max=4.1, y_max=8.25),
        },
    )


@pytest.fixture(scope="session")
def side_p2() -> ScenarioConfig:
    return load_scenario("side-p2")


@pytest.fixture(scope="session")
def side_p3() -> ScenarioConfig:
    return load_scenario("side-p3")


@pytest.fixture(scope="session")
def wall_p2() -> ScenarioConfig:
    return load_scenario("wall-p2")


@pytest.fixture(scope="session")
def side_p2_runs(side_p2: ScenarioConfig) -> tuple[list[Cir], list[Cir]]:
    """Calibration and measurement run of the P2 scenario, 300 epochs at 20 dB."""
    calibration = synth_stream(side_p2, 300, empty=True)
    measurement = synth_stream(side_p2, 300)
    return calibration, measurement


@pytest.fixture(scope="session")
def side_p2_clean_runs(side_p2: ScenarioConfig) -> tuple[list[Cir], list[Cir]]:
    """Noise free calibration and measurement of the P2 scenario."""
    noise = NoiseSpec(snr_db=math.inf)
    return (
        synth_stream(side_p2, 6, noise, empty=True),
        synth_stream(side_p2, 6, noise),
    )


@pytest.fixture()
def record_files(
    tmp_path: Path, side_p2: ScenarioConfig
) -> tuple[Path, Path]:
    """Short calibration and measurement record files of the P2 scenario."""
    calibration_path = tmp_path / "calibration.csv"
    measurement_path = tmp_path / "measurement.csv"
    write_cir_file(synth_stream(side_p2, 20, empty=True), calibration_path)
    write_cir_file(synth_stream(side_p2, 20), measurement_path)
    return calibration_path, measurement_path
