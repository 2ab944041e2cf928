"""Tests for reflection estimation, lot assignment and evaluation."""

import numpy as np
import pytest

from cirsense.exceptions import DegenerateProfileError, EmptyReportsError, InvalidParameterError
from cirsense.models.detection import (
    AssignmentStatus,
    OccupancyReport,
    ReflectionEstimate,
)
from cirsense.models.filtering import FilterMode, SubtractedProfile
from cirsense.processing.detection import assign_lot, estimate_reflection, evaluate

SIDE_INTERVALS = {"P1": (3.2, 6.0), "P2": (6.0, 11.0), "P3": (11.0, 17.0)}


def _estimate(d_r: float) -> ReflectionEstimate:
    return ReflectionEstimate(d_r_est=d_r, amplitude=0.8, tap=10)


def test_zero_profile_has_no_estimate(make_subtracted):
    """Ensure that an empty residual gives no reflection."""
    assert estimate_reflection(make_subtracted(), 3.2, 3, 0.2) is None


def test_estimate_of_injected_peak(make_subtracted):
    """Ensure that a residual peak is mapped to its bistatic range."""
    sub = make_subtracted(leading_edge=20, peaks={32: 0.9}, delta_t=1e-9)

    estimate = estimate_reflection(sub, 3.2, 3, 0.2)

    assert estimate.tap == 32
    assert estimate.amplitude == 0.9
    assert estimate.d_r_est == pytest.approx(6.80, abs=0.01)


def test_estimate_skips_guard_zone(make_subtracted):
    """Ensure that residuals right after the leading edge are ignored."""
    sub = make_subtracted(leading_edge=20, peaks={21: 1.5, 22: 1.0, 30: 0.4})

    estimate = estimate_reflection(sub, 3.2, 3, 0.2)

    assert estimate.tap == 30
    assert estimate.tap >= 20 + 3


def test_estimate_below_threshold(make_subtracted):
    """Ensure that weak residuals are not reported."""
    sub = make_subtracted(peaks={30: 0.1})

    assert estimate_reflection(sub, 3.2, 3, 0.2) is None
    assert estimate_reflection(sub, 3.2, 3, 0.0).tap == 30


def test_estimate_without_threshold_always_returned(make_subtracted):
    """Ensure that without a threshold the maximum is always reported."""
    sub = make_subtracted(leading_edge=20, peaks={21: 0.5})

    estimate = estimate_reflection(sub, 3.2, 3, 0.0)

    assert estimate is not None
    assert estimate.tap >= 23


def test_estimate_is_scale_free(make_subtracted):
    """Ensure that scaling the profile leaves the estimate unchanged."""
    rng = np.random.default_rng(4)
    values = rng.uniform(0, 1, size=128)
    sub = SubtractedProfile(values=values, delta_t=1e-9, leading_edge=10)
    scaled = SubtractedProfile(values=values * 0.37, delta_t=1e-9, leading_edge=10)

    assert (
        estimate_reflection(sub, 3.2, 3, 0.0).tap
        == estimate_reflection(scaled, 3.2, 3, 0.0).tap
    )


def test_estimate_needs_leading_edge():
    """Ensure that a profile without a leading edge is refused."""
    sub = SubtractedProfile(values=np.ones(8), delta_t=1e-9, leading_edge=None)

    with pytest.raises(DegenerateProfileError):
        estimate_reflection(sub, 3.2, 3, 0.2)


def test_assign_lot():
    """Ensure that an estimate inside one interval is assigned to that lot."""
    assert assign_lot(_estimate(13.5), {"P3": (11.0, 17.0)}).lot == "P3"
    assert assign_lot(_estimate(7.5), SIDE_INTERVALS).lot == "P2"

    assignment = assign_lot(_estimate(2.0), SIDE_INTERVALS)
    assert assignment.status == AssignmentStatus.NONE
    assert assignment.lot is None


def test_assign_lot_reports_overlap():
    """Ensure that an estimate inside two intervals is ambiguous."""
    assignment = assign_lot(_estimate(12.0), {"P2": (6.0, 12.7), "P3": (11.2, 17.8)})

    assert assignment.status == AssignmentStatus.AMBIGUOUS
    assert assignment.lot is None
    assert assignment.candidates == ["P2", "P3"]


def test_assign_lot_needs_intervals():
    with pytest.raises(InvalidParameterError):
        assign_lot(_estimate(7.5), {})


def _reports(lots: list[str | None], mode: FilterMode) -> list[OccupancyReport]:
    return [
        OccupancyReport(
            epoch=epoch,
            mode=mode,
            lot=lot,
            candidates=[] if lot is None else [lot],
            estimate=None if lot is None else _estimate(7.0),
        )
        for epoch, lot in enumerate(lots)
    ]


def test_evaluate_all_correct():
    """Ensure that ratio, epoch count and residuals are reported."""
    summary = evaluate(_reports(["P2"] * 4, FilterMode.FILTERED), "P2", reference_d_r=6.8)

    assert summary.ratios[FilterMode.FILTERED] == 1.0
    assert summary.epochs[FilterMode.FILTERED] == 4
    assert summary.residuals[FilterMode.FILTERED] == pytest.approx([0.2] * 4)
    assert summary.median_abs_residual(FilterMode.FILTERED) == pytest.approx(0.2)


def test_evaluate_per_mode():
    """Ensure that filtered and unfiltered reports are scored separately."""
    reports = _reports(["P2", "P2", "P2", None], FilterMode.FILTERED) + _reports(
        ["P2", "P3", None, None], FilterMode.UNFILTERED
    )

    summary = evaluate(reports, "P2", reference_d_r=6.8)

    assert summary.ratios[FilterMode.FILTERED] == 0.75
    assert summary.ratios[FilterMode.UNFILTERED] == 0.25
    # residuals only for epochs with an estimate
    assert summary.epochs[FilterMode.UNFILTERED] == 4
    assert len(summary.residuals[FilterMode.UNFILTERED]) == 2
    assert len(summary.residuals[FilterMode.FILTERED]) == 3


def test_evaluate_ignores_order():
    """Ensure that the ratio does not depend on report order."""
    reports = _reports(["P2", "P1", None, "P2", "P2"], FilterMode.UNFILTERED)

    assert (
        evaluate(reports, "P2").ratios == evaluate(list(reversed(reports)), "P2").ratios
    )


def test_evaluate_needs_reports():
    with pytest.raises(EmptyReportsError):
        evaluate([], "P2")
