"""Models related to reflection estimates and occupancy verdicts."""

from enum import StrEnum

import numpy as np
from pydantic import Field, NonNegativeInt, field_validator, model_validator

from .base import RWModel
from .filtering import FilterMode


class AssignmentStatus(StrEnum):
    """Outcome of comparing an estimate against the lot intervals."""

    ASSIGNED = "assigned"
    NONE = "none"
    AMBIGUOUS = "ambiguous"


class ReflectionEstimate(RWModel):
    """Dominant residual of a subtracted profile."""

    d_r_est: float = Field(..., gt=0, description="Estimated bistatic range (m).")
    # difference of two normalized profiles never exceeds 2
    amplitude: float = Field(..., ge=0, le=2)
    tap: NonNegativeInt | None = Field(
        default=None, description="Tap index, unknown for estimates read from a report file."
    )


class LotAssignment(RWModel):
    """Lot(s) whose range interval contains an estimate."""

    status: AssignmentStatus
    lot: str | None = None
    candidates: list[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def check_status(self) -> "LotAssignment":
        if self.status == AssignmentStatus.ASSIGNED and self.lot is None:
            raise ValueError("An assigned verdict needs a lot")
        if self.status != AssignmentStatus.ASSIGNED and self.lot is not None:
            raise ValueError(f"A {self.status} verdict cannot name a lot")
        if self.status == AssignmentStatus.AMBIGUOUS and len(self.candidates) < 2:
            raise ValueError("An ambiguous verdict needs at least two candidates")
        return self


class OccupancyReport(RWModel):
    """Detection result for one epoch."""

    epoch: NonNegativeInt
    mode: FilterMode
    lot: str | None = None
    candidates: list[str] = Field(default_factory=list)
    estimate: ReflectionEstimate | None = None

    @model_validator(mode="after")
    def check_lot(self) -> "OccupancyReport":
        if self.lot is not None and self.estimate is None:
            raise ValueError("A lot can only be reported together with an estimate")
        return self

    @property
    def ambiguous(self) -> bool:
        return len(self.candidates) > 1


class DetectionSummary(RWModel):
    """Correct assignment ratios and range residuals of one scenario."""

    scenario: str
    truth: str
    ratios: dict[FilterMode, float] = Field(default_factory=dict)
    epochs: dict[FilterMode, int] = Field(default_factory=dict)
    residuals: dict[FilterMode, list[float]] = Field(
        default_factory=dict,
        description=(
            "d_r_est - reference_d_r per mode, only for epochs that produced an estimate, "
            "so there can be fewer residuals than evaluated epochs."
        ),
    )

    @field_validator("ratios")
    @classmethod
    def validate_ratios(cls, ratios: dict[FilterMode, float]) -> dict[FilterMode, float]:
        for mode, ratio in ratios.items():
            if not 0 <= ratio <= 1:
                raise ValueError(f"Ratio {ratio} for {mode} is not within 0-1")
        return ratios

    def median_abs_residual(self, mode: FilterMode) -> float | None:
        """Median of |d_r_est - reference| over the epochs with an estimate."""
        residuals = self.residuals.get(mode)
        if not residuals:
            return None
        return float(np.median(np.abs(residuals)))
