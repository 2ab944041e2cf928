"""Tests for heatmap rasterization."""

import math

import numpy as np
import pytest

from cirsense.exceptions import CoverageError, DegenerateProfileError
from cirsense.models.filtering import SubtractedProfile
from cirsense.models.geometry import GridSpec
from cirsense.processing.geometry import (
    bistatic_range_of_tap,
    grid_for_lots,
    reflection_path_lengths,
)
from cirsense.processing.heatmap import build_heatmap


def test_zero_profile_gives_zero_grid(side_geometry, make_subtracted):
    """Ensure that an empty residual gives an empty heatmap."""
    grid_spec = grid_for_lots(side_geometry, 0.1)

    heat = build_heatmap(make_subtracted(), side_geometry, grid_spec)

    assert heat.cells.shape == (grid_spec.height, grid_spec.width)
    assert not np.any(heat.cells)


def test_single_tap_draws_its_ellipse(side_geometry, make_subtracted):
    """Ensure that one residual tap lights the cells of its ellipse."""
    grid_spec = grid_for_lots(side_geometry, 0.1, fill_radius=0)
    sub = make_subtracted(leading_edge=20, peaks={32: 0.8})
    d_r = bistatic_range_of_tap(32, 20, 3.2, sub.delta_t)

    heat = build_heatmap(sub, side_geometry, grid_spec)

    rows, cols = np.nonzero(heat.cells)
    assert rows.size > 0
    assert np.all(heat.cells[rows, cols] == 0.8)
    xs, ys = grid_spec.cell_centers()
    ranges = reflection_path_lengths(side_geometry, xs[rows, cols], ys[rows, cols])
    tap_length = sub.delta_t * side_geometry.c
    assert np.all(np.abs(ranges - d_r) < math.sqrt(2) * 0.1 + tap_length)


def test_heat_cells_keep_maximum(side_geometry, make_subtracted):
    """Ensure that a cell keeps the largest amplitude of the crossing ellipses."""
    grid_spec = grid_for_lots(side_geometry, 0.1, fill_radius=0)
    weak = make_subtracted(peaks={32: 0.3})
    both = make_subtracted(peaks={32: 0.3, 33: 0.9})

    weak_heat = build_heatmap(weak, side_geometry, grid_spec)
    both_heat = build_heatmap(both, side_geometry, grid_spec)

    assert both_heat.cells.max() == 0.9
    assert np.all(both_heat.cells >= weak_heat.cells)


def test_nearest_neighbour_fill(side_geometry, make_subtracted):
    """Ensure that empty cells near an ellipse are filled and far ones stay empty."""
    sub = make_subtracted(peaks={32: 0.5})
    bare = build_heatmap(sub, side_geometry, grid_for_lots(side_geometry, 0.1, fill_radius=0))
    filled = build_heatmap(sub, side_geometry, grid_for_lots(side_geometry, 0.1, fill_radius=3))

    assert np.count_nonzero(filled.cells) > np.count_nonzero(bare.cells)
    assert set(np.unique(filled.cells)) == {0.0, 0.5}
    # the far corner lies well beyond the fill radius of the ring
    assert filled.cells[-1, -1] == 0
    assert bare.cells[-1, -1] == 0


def test_heatmap_needs_leading_edge(side_geometry):
    """Ensure that a profile without a leading edge cannot be mapped."""
    sub = SubtractedProfile(values=np.zeros(64), delta_t=1e-9, leading_edge=None)

    with pytest.raises(DegenerateProfileError):
        build_heatmap(sub, side_geometry, grid_for_lots(side_geometry, 0.1))


def test_heatmap_grid_must_cover_lots(side_geometry, make_subtracted):
    """Ensure that a grid missing the lots is refused."""
    grid_spec = GridSpec(origin=(0.0, 0.0), cell_size=0.1, width=10, height=10)

    with pytest.raises(CoverageError):
        build_heatmap(make_subtracted(), side_geometry, grid_spec)
