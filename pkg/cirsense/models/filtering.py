"""Models for temporal filtering and background subtraction."""

from enum import StrEnum

import numpy as np
from pydantic import NonNegativeInt, PositiveFloat, PositiveInt, field_validator

from .base import FrozenModel, RealArray
from .cir import MagnitudeProfile


class FilterMode(StrEnum):
    """Valid temporal filter modes."""

    FILTERED = "filtered"
    UNFILTERED = "unfiltered"


class EwmaState(FrozenModel):
    """Running exponentially weighted average of one anchor pair's stream."""

    current: MagnitudeProfile
    alpha: float
    epochs_seen: PositiveInt

    @field_validator("alpha")
    @classmethod
    def validate_alpha(cls, value: float) -> float:
        if not 0 < value <= 1:
            raise ValueError(f"alpha {value} is not within (0, 1]")
        return value


class SubtractedProfile(FrozenModel):
    """Absolute difference of an aligned, normalized measurement and reference."""

    values: RealArray
    delta_t: PositiveFloat
    leading_edge: NonNegativeInt | None

    @field_validator("values")
    @classmethod
    def validate_values(cls, values: np.ndarray) -> np.ndarray:
        if not np.all(np.isfinite(values)) or np.any(values < 0):
            raise ValueError("Subtracted values must be finite and non-negative")
        return values

    @property
    def k_taps(self) -> int:
        return int(self.values.size)
