import json
from pathlib import Path

import numpy as np
import pytest

from cirsense.exceptions import SchemaError
from cirsense.io import read_heatmap, read_reports_csv, write_heatmap, write_reports_csv, write_summary
from cirsense.models.detection import DetectionSummary, OccupancyReport, ReflectionEstimate
from cirsense.models.filtering import FilterMode
from cirsense.models.geometry import HeatGrid


@pytest.fixture()
def reports() -> list[OccupancyReport]:
    return [
        OccupancyReport(
            epoch=4,
            mode=FilterMode.FILTERED,
            lot="P2",
            candidates=["P2"],
            estimate=ReflectionEstimate(d_r_est=7.1, amplitude=0.6, tap=44),
        ),
        OccupancyReport(epoch=5, mode=FilterMode.FILTERED),
        OccupancyReport(
            epoch=6,
            mode=FilterMode.FILTERED,
            candidates=["P2", "P3"],
            estimate=ReflectionEstimate(d_r_est=11.0, amplitude=0.3),
        ),
    ]


def test_write_reports(tmp_path: Path, reports):
    """Ensure that reports are written as epoch,mode,lot,d_r_est,amplitude."""
    path = tmp_path / "reports.csv"

    write_reports_csv(reports, path)

    assert path.read_text().splitlines() == [
        "epoch,mode,lot,d_r_est,amplitude",
        "4,filtered,P2,7.100000,0.600000",
        "5,filtered,,,",
        "6,filtered,ambiguous:P2|P3,11.000000,0.300000",
    ]


def test_read_reports(tmp_path: Path, reports):
    """Ensure that assigned, empty and ambiguous reports are read back."""
    path = tmp_path / "reports.csv"
    write_reports_csv(reports, path)

    assigned, empty, ambiguous = read_reports_csv(path)

    assert assigned.lot == "P2"
    assert assigned.estimate.d_r_est == pytest.approx(7.1)
    assert assigned.estimate.tap is None
    assert empty.lot is None and empty.estimate is None
    assert ambiguous.lot is None
    assert ambiguous.ambiguous
    assert ambiguous.candidates == ["P2", "P3"]


def test_read_reports_with_wrong_columns(tmp_path: Path):
    path = tmp_path / "reports.csv"
    path.write_text("epoch,lot\n1,P2\n")

    with pytest.raises(SchemaError):
        read_reports_csv(path)


def test_write_summary(tmp_path: Path):
    """Ensure that the summary is written as JSON."""
    summary = DetectionSummary(
        scenario="side-p2",
        truth="P2",
        ratios={FilterMode.FILTERED: 0.98},
        epochs={FilterMode.FILTERED: 296},
    )
    path = tmp_path / "summary.json"

    write_summary(summary, path)

    content = json.loads(path.read_text())
    assert content["truth"] == "P2"
    assert content["ratios"] == {"filtered": 0.98}


def test_heatmap_file(tmp_path: Path):
    """Ensure that a heatmap grid and its header are read back."""
    cells = np.zeros((3, 4))
    cells[1, 2] = 0.75
    grid = HeatGrid(origin=(-1.5, 0.25), cell_size=0.1, cells=cells)
    path = tmp_path / "heat.txt"

    write_heatmap(grid, path)
    read_back = read_heatmap(path)

    assert path.read_text().startswith("# origin_x=-1.5 origin_y=0.25 cell_size=0.1 width=4 height=3")
    assert read_back.origin == (-1.5, 0.25)
    assert read_back.cell_size == 0.1
    np.testing.assert_array_equal(read_back.cells, cells)
