"""Bistatic ellipse geometry of one transmitter/receiver pair."""

import logging
import math

import numpy as np
from scipy.optimize import minimize_scalar

from cirsense.constants import LOT_SAMPLE_PITCH, SPEED_OF_LIGHT
from cirsense.exceptions import (
    CoverageError,
    InfeasibleRangeError,
    InvalidParameterError,
    PreDirectPathError,
    UnknownLotError,
)
from cirsense.models.base import Point2D
from cirsense.models.geometry import EllipseParams, GridSpec, Rect, SiteGeometry

LOG = logging.getLogger(__name__)

# relative slack when comparing a range against the direct path
RANGE_TOLERANCE = 1e-12


def direct_path_length(geom: SiteGeometry) -> float:
    """Line of sight distance between the anchors."""
    return math.dist(geom.tx, geom.rx)


def reflection_path_length(geom: SiteGeometry, point: Point2D) -> float:
    """Bistatic range tx -> point -> rx."""
    return math.dist(geom.tx, point) + math.dist(geom.rx, point)


def reflection_path_lengths(
    geom: SiteGeometry, xs: np.ndarray, ys: np.ndarray
) -> np.ndarray:
    """Vectorized reflection_path_length over coordinate arrays."""
    return np.hypot(xs - geom.tx[0], ys - geom.tx[1]) + np.hypot(
        xs - geom.rx[0], ys - geom.rx[1]
    )


def bistatic_range_of_tap(
    k: int, k_le: int, d_p: float, delta_t: float, c: float = SPEED_OF_LIGHT
) -> float:
    """Range of tap k, anchored at the direct path observed at the leading edge."""
    if k < k_le:
        raise PreDirectPathError(f"Tap {k} precedes the leading edge at tap {k_le}")
    return d_p + (k - k_le) * delta_t * c


def ellipse_axes(d_r: float, d_p: float) -> EllipseParams:
    """Semi-axes a = d_r / 2 and b = sqrt(a^2 - (d_p / 2)^2).

    Ranges equal to the direct path, within rounding, give the degenerate
    ellipse b = 0.
    """
    if d_p <= 0:
        raise InvalidParameterError(f"Direct path length must be positive, got {d_p}")
    if d_r < d_p * (1 - RANGE_TOLERANCE):
        raise InfeasibleRangeError(
            f"Range {d_r} m is shorter than the direct path of {d_p} m"
        )
    semi_major = max(d_r, d_p) / 2
    focus = d_p / 2
    semi_minor = math.sqrt(max((semi_major - focus) * (semi_major + focus), 0.0))
    return EllipseParams(a=semi_major, b=semi_minor, degenerate=semi_minor == 0)


def site_ellipse(geom: SiteGeometry, d_r: float) -> EllipseParams:
    """Ellipse of range d_r placed in site coordinates."""
    axes = ellipse_axes(d_r, direct_path_length(geom))
    return axes.model_copy(
        update={"center": geom.midpoint, "rotation": geom.baseline_angle}
    )


def ellipse_perimeter(a: float, b: float) -> float:
    """Ramanujan's second approximation of the perimeter."""
    if a + b == 0:
        return 0.0
    h = ((a - b) / (a + b)) ** 2
    return math.pi * (a + b) * (1 + 3 * h / (10 + math.sqrt(4 - 3 * h)))


def ellipse_points(geom: SiteGeometry, d_r: float, n_samples: int) -> np.ndarray:
    """Sample n_samples points of the ellipse with foci tx, rx and range d_r.

    Returns an array of shape (n_samples, 2) in site coordinates.
    """
    if n_samples < 8:
        raise InvalidParameterError(f"Need at least 8 ellipse samples, got {n_samples}")
    ellipse = site_ellipse(geom, d_r)
    theta = np.linspace(0, 2 * np.pi, n_samples, endpoint=False)
    local_x = ellipse.a * np.cos(theta)
    local_y = ellipse.b * np.sin(theta)
    cos_r, sin_r = math.cos(ellipse.rotation), math.sin(ellipse.rotation)
    xs = ellipse.center[0] + cos_r * local_x - sin_r * local_y
    ys = ellipse.center[1] + sin_r * local_x + cos_r * local_y
    return np.column_stack([xs, ys])


def segment_intersects_rect(start: Point2D, end: Point2D, rect: Rect) -> bool:
    """Liang-Barsky clipping test of a line segment against a rectangle."""
    dx = end[0] - start[0]
    dy = end[1] - start[1]
    t_enter, t_exit = 0.0, 1.0
    for p, q in (
        (-dx, start[0] - rect.x_min),
        (dx, rect.x_max - start[0]),
        (-dy, start[1] - rect.y_min),
        (dy, rect.y_max - start[1]),
    ):
        if p == 0:
            if q < 0:
                return False
            continue
        ratio = q / p
        if p < 0:
            t_enter = max(t_enter, ratio)
        else:
            t_exit = min(t_exit, ratio)
        if t_enter > t_exit:
            return False
    return True


def _sample_axis(low: float, high: float, pitch: float) -> np.ndarray:
    return np.linspace(low, high, max(2, math.ceil((high - low) / pitch) + 1))


def _boundary_minimum(geom: SiteGeometry, rect: Rect) -> float:
    """Refine the smallest range along the four edges of a rectangle."""
    corners = rect.corners
    best = math.inf
    for start, end in zip(corners, corners[1:] + corners[:1]):

        def range_on_edge(t: float, start: Point2D = start, end: Point2D = end) -> float:
            point = (start[0] + t * (end[0] - start[0]), start[1] + t * (end[1] - start[1]))
            return reflection_path_length(geom, point)

        result = minimize_scalar(range_on_edge, bounds=(0.0, 1.0), method="bounded")
        best = min(best, float(result.fun), range_on_edge(0.0), range_on_edge(1.0))
    return best


def lot_range_interval(
    geom: SiteGeometry, lot_id: str, delta_t: float, pitch: float = LOT_SAMPLE_PITCH
) -> tuple[float, float]:
    """Smallest and largest bistatic range of any point inside a lot.

    The interval is widened by one tap length on both sides.
    """
    if lot_id not in geom.lots:
        raise UnknownLotError(f"Lot '{lot_id}' is not part of the site", lot_id=lot_id)
    rect = geom.lots[lot_id]
    xs, ys = np.meshgrid(
        _sample_axis(rect.x_min, rect.x_max, pitch),
        _sample_axis(rect.y_min, rect.y_max, pitch),
    )
    ranges = reflection_path_lengths(geom, xs, ys)

    # the range is convex, so its maximum sits in a corner and its minimum
    # is either on the baseline or on the boundary
    d_max = max(reflection_path_length(geom, corner) for corner in rect.corners)
    if segment_intersects_rect(geom.tx, geom.rx, rect):
        d_min = direct_path_length(geom)
    else:
        d_min = min(float(ranges.min()), _boundary_minimum(geom, rect))
    d_max = max(d_max, float(ranges.max()))

    tap_length = delta_t * geom.c
    LOG.debug("Lot %s covers ranges %.3f-%.3f m", lot_id, d_min, d_max)
    return (d_min - tap_length, d_max + tap_length)


def lot_intervals(geom: SiteGeometry, delta_t: float) -> dict[str, tuple[float, float]]:
    """Range interval of every lot of the site."""
    return {lot_id: lot_range_interval(geom, lot_id, delta_t) for lot_id in geom.lots}


def lots_bounding_box(geom: SiteGeometry) -> Rect:
    if not geom.lots:
        raise CoverageError("The site defines no parking lots")
    rects = list(geom.lots.values())
    return Rect(
        x_min=min(rect.x_min for rect in rects),
        y_min=min(rect.y_min for rect in rects),
        x_max=max(rect.x_max for rect in rects),
        y_max=max(rect.y_max for rect in rects),
    )


def grid_for_lots(
    geom: SiteGeometry, cell_size: float, margin: float = 1.0, fill_radius: int = 3
) -> GridSpec:
    """Heatmap grid covering all lots plus a margin."""
    box = lots_bounding_box(geom)
    return GridSpec(
        origin=(box.x_min - margin, box.y_min - margin),
        cell_size=cell_size,
        width=math.ceil((box.x_max - box.x_min + 2 * margin) / cell_size),
        height=math.ceil((box.y_max - box.y_min + 2 * margin) / cell_size),
        fill_radius=fill_radius,
    )
