"""Models describing a synthetic propagation scene."""

import math
from enum import StrEnum

from pydantic import Field, NonNegativeInt, PositiveFloat, field_validator

from cirsense.config import settings

from .base import Point2D, RWModel


class PulseKind(StrEnum):
    """Supported transmit pulse envelopes."""

    GAUSSIAN = "gaussian"
    RAISED_COSINE = "raised-cosine"


class PulseShape(RWModel):
    """Transmitted pulse s(t), sampled at tap resolution."""

    kind: PulseKind = PulseKind.GAUSSIAN
    width: PositiveFloat = Field(
        default_factory=lambda: settings.pulse_width,
        description="Full width between the half power points (s).",
    )


class Reflector(RWModel):
    """Point scatterer in the site plane."""

    position: Point2D
    # effective scattering strength in m, amplitude = reflectivity / (d1 * d2)
    reflectivity: float = Field(default=1.0, ge=0)
    double_bounce_partner: Point2D | None = None
    double_bounce_reflectivity: float = Field(default=0.5, ge=0)
    phase: float | None = Field(
        default=None, description="Fixed carrier phase in radians, drawn when unset."
    )

    @field_validator("reflectivity", "double_bounce_reflectivity")
    @classmethod
    def validate_finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError(f"Reflectivity must be finite, got {value}")
        return value


class NoiseSpec(RWModel):
    """Additive white noise relative to the direct path peak."""

    snr_db: float = 20.0
    seed: NonNegativeInt = 0

    @property
    def noiseless(self) -> bool:
        return math.isinf(self.snr_db) and self.snr_db > 0
