"""Rasterize subtracted profiles onto the site plan."""

import logging
import math

import numpy as np
from scipy.spatial import cKDTree

from cirsense.constants import MIN_ELLIPSE_SAMPLES
from cirsense.exceptions import CoverageError, DegenerateProfileError
from cirsense.models.filtering import SubtractedProfile
from cirsense.models.geometry import GridSpec, HeatGrid, SiteGeometry

from .geometry import (
    bistatic_range_of_tap,
    direct_path_length,
    ellipse_perimeter,
    ellipse_points,
    lots_bounding_box,
    reflection_path_length,
    site_ellipse,
)

LOG = logging.getLogger(__name__)


def check_coverage(geom: SiteGeometry, grid_spec: GridSpec) -> None:
    """Raise if the grid does not contain every parking lot."""
    box = lots_bounding_box(geom)
    extent = grid_spec.extent
    slack = 1e-9 * max(1.0, grid_spec.cell_size)
    if (
        extent.x_min > box.x_min + slack
        or extent.y_min > box.y_min + slack
        or extent.x_max < box.x_max - slack
        or extent.y_max < box.y_max - slack
    ):
        raise CoverageError(
            f"Grid ({extent.x_min}, {extent.y_min})-({extent.x_max}, {extent.y_max}) "
            f"does not cover the lots ({box.x_min}, {box.y_min})-({box.x_max}, {box.y_max})"
        )


def _nearest_fill(cells: np.ndarray, hit: np.ndarray, radius: int) -> np.ndarray:
    """Give empty cells the value of the closest hit cell within radius cells."""
    if radius == 0 or not hit.any() or hit.all():
        return cells
    tree = cKDTree(np.argwhere(hit))
    empty = np.argwhere(~hit)
    distances, nearest = tree.query(empty, distance_upper_bound=radius + 1e-9)
    found = np.isfinite(distances)
    sources = tree.data[nearest[found]].astype(int)
    filled = cells.copy()
    filled[empty[found, 0], empty[found, 1]] = cells[sources[:, 0], sources[:, 1]]
    return filled


def build_heatmap(
    sub: SubtractedProfile, geom: SiteGeometry, grid_spec: GridSpec
) -> HeatGrid:
    """Map every tap after the leading edge to its ellipse and keep the cell maximum.

    Cells that no ellipse crosses take the value of their nearest crossed
    cell when one lies within grid_spec.fill_radius cells.
    """
    if sub.leading_edge is None:
        raise DegenerateProfileError("Subtracted profile has no leading edge to anchor ranges")
    check_coverage(geom, grid_spec)

    cells = np.zeros((grid_spec.height, grid_spec.width), dtype=np.float64)
    hit = np.zeros_like(cells, dtype=bool)
    d_p = direct_path_length(geom)
    # a convex range function peaks in one of the grid corners
    max_range = max(reflection_path_length(geom, corner) for corner in grid_spec.extent.corners)

    n_rings = 0
    for tap in range(sub.leading_edge, sub.k_taps):
        amplitude = float(sub.values[tap])
        if amplitude <= 0:
            continue
        d_r = bistatic_range_of_tap(tap, sub.leading_edge, d_p, sub.delta_t, geom.c)
        if d_r <= d_p:
            continue
        if d_r > max_range:
            break
        ellipse = site_ellipse(geom, d_r)
        n_samples = max(
            MIN_ELLIPSE_SAMPLES,
            math.ceil(ellipse_perimeter(ellipse.a, ellipse.b) / grid_spec.cell_size),
        )
        points = ellipse_points(geom, d_r, n_samples)
        cols = np.floor((points[:, 0] - grid_spec.origin[0]) / grid_spec.cell_size).astype(int)
        rows = np.floor((points[:, 1] - grid_spec.origin[1]) / grid_spec.cell_size).astype(int)
        inside = (cols >= 0) & (cols < grid_spec.width) & (rows >= 0) & (rows < grid_spec.height)
        np.maximum.at(cells, (rows[inside], cols[inside]), amplitude)
        hit[rows[inside], cols[inside]] = True
        n_rings += 1

    LOG.debug("Rasterized %d ellipse rings", n_rings)
    cells = _nearest_fill(cells, hit, grid_spec.fill_radius)
    return HeatGrid(origin=grid_spec.origin, cell_size=grid_spec.cell_size, cells=cells)
