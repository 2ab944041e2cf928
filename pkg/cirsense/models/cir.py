"""Models for channel impulse responses and their magnitudes."""

import math

import numpy as np
from pydantic import Field, NonNegativeInt, PositiveFloat, field_validator, model_validator

from cirsense.exceptions import RejectedInputError

from .base import ComplexArray, FrozenModel, RealArray, RWModel


class ComplexTap(RWModel):
    """One in-phase/quadrature sample of the accumulator."""

    i: float
    q: float

    @field_validator("i", "q")
    @classmethod
    def validate_finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError(f"Tap component must be finite, got {value}")
        return value


class Cir(FrozenModel):
    """One epoch's channel impulse response between two anchors.

    Tap k is received k * delta_t after the (arbitrary) start of the record.
    """

    taps: ComplexArray
    delta_t: PositiveFloat
    epoch: NonNegativeInt = 0
    tx_id: str = "T1"
    rx_id: str = "R1"

    @field_validator("taps")
    @classmethod
    def validate_taps(cls, taps: np.ndarray) -> np.ndarray:
        if taps.size == 0:
            raise ValueError("A CIR needs at least one tap")
        if not np.all(np.isfinite(taps)):
            raise RejectedInputError("CIR taps must be finite")
        return taps

    @property
    def k_taps(self) -> int:
        return int(self.taps.size)

    def tap(self, index: int) -> ComplexTap:
        value = self.taps[index]
        return ComplexTap(i=float(value.real), q=float(value.imag))

    @classmethod
    def from_taps(cls, taps: list[ComplexTap], delta_t: float, **kwargs) -> "Cir":
        """Build a CIR from individual I/Q samples."""
        values = np.array([complex(tap.i, tap.q) for tap in taps], dtype=np.complex128)
        return cls(taps=values, delta_t=delta_t, **kwargs)


class MagnitudeProfile(FrozenModel):
    """Real valued tap magnitudes, optionally normalized to a unit maximum."""

    values: RealArray
    delta_t: PositiveFloat
    leading_edge: NonNegativeInt | None = None
    normalized: bool = False
    degenerate: bool = Field(
        default=False, description="Set when normalization met an all-zero profile."
    )

    @field_validator("values")
    @classmethod
    def validate_values(cls, values: np.ndarray) -> np.ndarray:
        if values.size == 0:
            raise ValueError("A profile needs at least one value")
        if not np.all(np.isfinite(values)):
            raise ValueError("Profile values must be finite")
        if np.any(values < 0):
            raise ValueError("Profile values must be non-negative")
        return values

    @model_validator(mode="after")
    def check_flags(self) -> "MagnitudeProfile":
        """Check leading edge bounds and the normalization contract."""
        if self.leading_edge is not None and self.leading_edge >= self.values.size:
            raise ValueError(
                f"Leading edge {self.leading_edge} outside of profile with {self.values.size} taps"
            )
        peak = float(self.values.max())
        if self.degenerate and peak != 0:
            raise ValueError("Only all-zero profiles can be flagged degenerate")
        if self.normalized and not self.degenerate and peak != 1.0:
            raise ValueError(f"Normalized profile has maximum {peak}, expected 1")
        return self

    @property
    def k_taps(self) -> int:
        return int(self.values.size)

    @property
    def is_zero(self) -> bool:
        return not np.any(self.values > 0)
