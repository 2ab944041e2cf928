"""Run the detection chain: CIR, EWMA, subtraction, elliptical model, detection."""

import logging
import math
from pathlib import Path
from typing import Sequence

from pydantic import Field

from cirsense.exceptions import ConstantMismatchError, InsufficientDataError
from cirsense.io import read_cir_file, read_cir_header
from cirsense.models.base import FrozenModel
from cirsense.models.cir import Cir, MagnitudeProfile
from cirsense.models.detection import DetectionSummary, OccupancyReport
from cirsense.models.filtering import FilterMode
from cirsense.models.geometry import GridSpec, HeatGrid
from cirsense.models.scenario import ScenarioConfig
from cirsense.processing.detection import assign_lot, estimate_reflection, evaluate
from cirsense.processing.filtering import background_subtract, filter_offset, filter_stream
from cirsense.processing.geometry import direct_path_length, grid_for_lots, lot_intervals
from cirsense.processing.heatmap import build_heatmap
from cirsense.processing.profile import check_length, magnitude

LOG = logging.getLogger(__name__)


class PipelineResult(FrozenModel):
    """Reports of one mode, plus the summary and heatmap when requested."""

    mode: FilterMode
    reports: list[OccupancyReport] = Field(default_factory=list)
    intervals: dict[str, tuple[float, float]] = Field(default_factory=dict)
    summary: DetectionSummary | None = None
    heatmap: HeatGrid | None = None


def check_constants(
    k_taps: int, delta_t: float, scenario: ScenarioConfig, source: str
) -> None:
    """Raise if recorded constants differ from the scenario's."""
    constants = scenario.constants
    if k_taps != constants.k_taps or not math.isclose(
        delta_t, constants.delta_t, rel_tol=1e-9
    ):
        raise ConstantMismatchError(
            f"{source} holds {k_taps} taps of {delta_t:.6g} s, scenario "
            f"'{scenario.name}' expects {constants.k_taps} taps of {constants.delta_t:.6g} s"
        )


def to_profiles(stream: Sequence[Cir], k_taps: int) -> list[MagnitudeProfile]:
    return [magnitude(check_length(cir, k_taps)) for cir in stream]


def scenario_intervals(scenario: ScenarioConfig) -> dict[str, tuple[float, float]]:
    """Hand set intervals of the scenario, or the ones computed from the lots."""
    if scenario.intervals is not None:
        return dict(scenario.intervals)
    return lot_intervals(scenario.geometry, scenario.constants.delta_t)


def process_streams(
    scenario: ScenarioConfig,
    calibration: Sequence[Cir],
    measurement: Sequence[Cir],
    mode: FilterMode,
    heatmap_epoch: int | None = None,
    grid_spec: GridSpec | None = None,
) -> PipelineResult:
    """Detect occupancy in every measurement epoch.

    Measurement epoch t is compared with calibration epoch t after both
    streams went through the same filter, and the last calibration output
    is reused for longer measurements. A negative heatmap_epoch builds the
    heatmap of the last epoch.
    """
    constants = scenario.constants
    geom = scenario.geometry
    for stream, source in ((calibration, "Calibration"), (measurement, "Measurement")):
        if not stream:
            raise InsufficientDataError(f"{source} stream is empty")
        check_constants(stream[0].k_taps, stream[0].delta_t, scenario, source)

    reference = filter_stream(
        to_profiles(calibration, constants.k_taps), mode, constants.alpha, constants.warmup_k
    )
    measured = filter_stream(
        to_profiles(measurement, constants.k_taps), mode, constants.alpha, constants.warmup_k
    )
    offset = filter_offset(mode, constants.warmup_k)
    if heatmap_epoch is not None and heatmap_epoch < 0:
        heatmap_epoch = measurement[-1].epoch
    intervals = scenario_intervals(scenario)
    d_p = direct_path_length(geom)
    LOG.info("Processing %d %s epochs of %s", len(measured), mode, scenario.name)

    reports = []
    heatmap = None
    for index, profile in enumerate(measured):
        epoch = measurement[index + offset].epoch
        sub = background_subtract(
            profile, reference[min(index, len(reference) - 1)], constants.leading_edge_fraction
        )
        estimate = estimate_reflection(
            sub, d_p, constants.guard_taps, constants.min_amplitude, geom.c
        )
        lot, candidates = None, []
        if estimate is not None:
            assignment = assign_lot(estimate, intervals)
            lot, candidates = assignment.lot, assignment.candidates
        LOG.debug("Epoch %d: estimate %s, lot %s", epoch, estimate, lot)
        reports.append(
            OccupancyReport(
                epoch=epoch, mode=mode, lot=lot, candidates=candidates, estimate=estimate
            )
        )
        if heatmap_epoch is not None and epoch == heatmap_epoch:
            spec = grid_spec or grid_for_lots(
                geom, constants.cell_size, fill_radius=constants.fill_radius
            )
            heatmap = build_heatmap(sub, geom, spec)

    if heatmap_epoch is not None and heatmap is None:
        raise InsufficientDataError(
            f"Epoch {heatmap_epoch} produced no {mode} output to build a heatmap from"
        )
    summary = None
    if scenario.truth is not None:
        summary = evaluate(reports, scenario.truth, scenario.reference_d_r, scenario.name)
    return PipelineResult(
        mode=mode, reports=reports, intervals=intervals, summary=summary, heatmap=heatmap
    )


def run_pipeline(
    scenario: ScenarioConfig,
    calib_file: Path,
    input_file: Path,
    mode: FilterMode,
    heatmap_epoch: int | None = None,
    grid_spec: GridSpec | None = None,
) -> PipelineResult:
    """Read a calibration and a measurement record file and process them."""
    for path in (calib_file, input_file):
        k_taps, delta_t = read_cir_header(path)
        check_constants(k_taps, delta_t, scenario, str(path))
    calibration = read_cir_file(calib_file, scenario.constants.k_taps)
    measurement = read_cir_file(input_file, scenario.constants.k_taps)
    return process_streams(
        scenario, calibration, measurement, mode, heatmap_epoch, grid_spec
    )
