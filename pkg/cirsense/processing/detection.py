"""Estimate reflection ranges and assign them to parking lots."""

import logging
from collections import defaultdict
from typing import Iterable, Mapping

import numpy as np

from cirsense.constants import SPEED_OF_LIGHT
from cirsense.exceptions import DegenerateProfileError, EmptyReportsError, InvalidParameterError
from cirsense.models.detection import (
    AssignmentStatus,
    DetectionSummary,
    LotAssignment,
    OccupancyReport,
    ReflectionEstimate,
)
from cirsense.models.filtering import FilterMode, SubtractedProfile

from .geometry import bistatic_range_of_tap

LOG = logging.getLogger(__name__)


def estimate_reflection(
    sub: SubtractedProfile,
    d_p: float,
    guard_taps: int,
    min_amplitude: float,
    c: float = SPEED_OF_LIGHT,
) -> ReflectionEstimate | None:
    """Take the strongest residual beyond the guard zone as the reflection path.

    Returns None for all-zero profiles, when the guard zone covers the rest
    of the record, or when the residual is below min_amplitude.
    """
    if sub.leading_edge is None:
        raise DegenerateProfileError("Subtracted profile has no leading edge")
    if not np.any(sub.values > 0):
        return None
    start = sub.leading_edge + guard_taps
    if start >= sub.k_taps:
        return None
    tap = start + int(np.argmax(sub.values[start:]))
    amplitude = float(sub.values[tap])
    if amplitude < min_amplitude:
        return None
    return ReflectionEstimate(
        d_r_est=bistatic_range_of_tap(tap, sub.leading_edge, d_p, sub.delta_t, c),
        amplitude=amplitude,
        tap=tap,
    )


def assign_lot(
    est: ReflectionEstimate, intervals: Mapping[str, tuple[float, float]]
) -> LotAssignment:
    """Compare an estimate with the lot intervals."""
    if not intervals:
        raise InvalidParameterError("No lot intervals to assign to")
    candidates = [
        lot_id
        for lot_id, (d_min, d_max) in intervals.items()
        if d_min <= est.d_r_est <= d_max
    ]
    if not candidates:
        return LotAssignment(status=AssignmentStatus.NONE)
    if len(candidates) == 1:
        return LotAssignment(
            status=AssignmentStatus.ASSIGNED, lot=candidates[0], candidates=candidates
        )
    LOG.warning(
        "Range %.2f m falls into overlapping intervals of %s",
        est.d_r_est,
        ", ".join(candidates),
    )
    return LotAssignment(status=AssignmentStatus.AMBIGUOUS, candidates=candidates)


def evaluate(
    reports: Iterable[OccupancyReport],
    truth: str,
    reference_d_r: float | None = None,
    scenario: str = "",
) -> DetectionSummary:
    """Share of epochs assigned to the true lot, per filter mode.

    Residuals against reference_d_r are collected for epochs with an estimate.
    """
    by_mode: dict[FilterMode, list[OccupancyReport]] = defaultdict(list)
    for report in reports:
        by_mode[FilterMode(report.mode)].append(report)
    if not by_mode:
        raise EmptyReportsError("No reports to evaluate")

    summary = DetectionSummary(scenario=scenario, truth=truth)
    for mode, mode_reports in by_mode.items():
        correct = sum(1 for report in mode_reports if report.lot == truth)
        summary.ratios[mode] = correct / len(mode_reports)
        summary.epochs[mode] = len(mode_reports)
        if reference_d_r is not None:
            summary.residuals[mode] = [
                report.estimate.d_r_est - reference_d_r
                for report in mode_reports
                if report.estimate is not None
            ]
        LOG.info(
            "%s: %d of %d epochs assigned to %s", mode, correct, len(mode_reports), truth
        )
    return summary
