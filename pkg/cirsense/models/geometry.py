"""Models related to the site plan and its rasterization."""

import math

import numpy as np
from pydantic import Field, NonNegativeInt, PositiveFloat, PositiveInt, field_validator, model_validator

from cirsense.constants import SPEED_OF_LIGHT

from .base import FrozenModel, Point2D, RealGrid, RWModel


class Rect(RWModel):
    """Axis aligned rectangle in site coordinates (m)."""

    x_min: float
    y_min: float
    x_max: float
    y_max: float

    @model_validator(mode="after")
    def check_area(self) -> "Rect":
        if not (self.x_max > self.x_min and self.y_max > self.y_min):
            raise ValueError(
                f"Rectangle ({self.x_min}, {self.y_min}, {self.x_max}, {self.y_max}) has no area"
            )
        return self

    @property
    def corners(self) -> list[Point2D]:
        return [
            (self.x_min, self.y_min),
            (self.x_max, self.y_min),
            (self.x_max, self.y_max),
            (self.x_min, self.y_max),
        ]


class SiteGeometry(RWModel):
    """Anchor positions, parking lots and propagation constants."""

    tx: Point2D
    rx: Point2D
    tx_id: str = "T1"
    rx_id: str = "R1"
    lots: dict[str, Rect] = Field(default_factory=dict)
    c: PositiveFloat = SPEED_OF_LIGHT
    obstacles: list[Rect] = Field(default_factory=list)

    @model_validator(mode="after")
    def check_anchors(self) -> "SiteGeometry":
        if math.dist(self.tx, self.rx) == 0:
            raise ValueError("Transmitter and receiver must not share a position")
        return self

    @property
    def midpoint(self) -> Point2D:
        return ((self.tx[0] + self.rx[0]) / 2, (self.tx[1] + self.rx[1]) / 2)

    @property
    def baseline_angle(self) -> float:
        return math.atan2(self.rx[1] - self.tx[1], self.rx[0] - self.tx[0])


class EllipseParams(RWModel):
    """Ellipse of constant bistatic range with the anchors in the foci."""

    a: float = Field(..., ge=0, description="Semi-major axis (m).")
    b: float = Field(..., ge=0, description="Semi-minor axis (m).")
    center: Point2D = (0.0, 0.0)
    rotation: float = Field(default=0.0, description="Baseline angle in radians.")
    degenerate: bool = False

    @model_validator(mode="after")
    def check_axes(self) -> "EllipseParams":
        if self.b > self.a:
            raise ValueError(f"Semi-minor axis {self.b} exceeds semi-major axis {self.a}")
        return self


class GridSpec(RWModel):
    """Raster layout of a heatmap."""

    origin: Point2D
    cell_size: PositiveFloat
    width: PositiveInt
    height: PositiveInt
    fill_radius: NonNegativeInt = 3

    @property
    def extent(self) -> Rect:
        return Rect(
            x_min=self.origin[0],
            y_min=self.origin[1],
            x_max=self.origin[0] + self.width * self.cell_size,
            y_max=self.origin[1] + self.height * self.cell_size,
        )

    def cell_centers(self) -> tuple[np.ndarray, np.ndarray]:
        """Return x and y coordinates of every cell center, shaped (height, width)."""
        xs = self.origin[0] + (np.arange(self.width) + 0.5) * self.cell_size
        ys = self.origin[1] + (np.arange(self.height) + 0.5) * self.cell_size
        return np.meshgrid(xs, ys)


class HeatGrid(FrozenModel):
    """Rasterized amplitude map of candidate reflector locations.

    Row j and column i cover the cell with lower left corner
    origin + (i, j) * cell_size.
    """

    origin: Point2D
    cell_size: PositiveFloat
    cells: RealGrid

    @field_validator("cells")
    @classmethod
    def validate_cells(cls, cells: np.ndarray) -> np.ndarray:
        if not np.all(np.isfinite(cells)) or np.any(cells < 0):
            raise ValueError("Heatmap cells must be finite and non-negative")
        return cells

    @property
    def height(self) -> int:
        return int(self.cells.shape[0])

    @property
    def width(self) -> int:
        return int(self.cells.shape[1])

    def cell_center(self, row: int, col: int) -> Point2D:
        return (
            self.origin[0] + (col + 0.5) * self.cell_size,
            self.origin[1] + (row + 0.5) * self.cell_size,
        )
