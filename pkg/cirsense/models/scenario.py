"""Models for scenario configuration files."""

from pydantic import Field, NonNegativeInt, PositiveFloat, PositiveInt, field_validator, model_validator

from cirsense.config import settings
from cirsense.constants import SPEED_OF_LIGHT

from .base import RWModel
from .geometry import Rect, SiteGeometry
from .simulation import NoiseSpec, PulseShape, Reflector


class ScenarioConstants(RWModel):
    """Processing constants of one scenario, defaulting to the global settings."""

    k_taps: PositiveInt = Field(default_factory=lambda: settings.k_taps, ge=16)
    delta_t: PositiveFloat = Field(default_factory=lambda: settings.delta_t)
    alpha: float = Field(default_factory=lambda: settings.alpha)
    warmup_k: PositiveInt = Field(default_factory=lambda: settings.warmup_k)
    leading_edge_fraction: float = Field(
        default_factory=lambda: settings.leading_edge_fraction
    )
    guard_taps: NonNegativeInt = Field(default_factory=lambda: settings.guard_taps)
    min_amplitude: float = Field(default_factory=lambda: settings.min_amplitude, ge=0)
    cell_size: PositiveFloat = Field(default_factory=lambda: settings.cell_size)
    fill_radius: NonNegativeInt = Field(default_factory=lambda: settings.fill_radius)

    @field_validator("alpha", "leading_edge_fraction")
    @classmethod
    def validate_fraction(cls, value: float) -> float:
        if not 0 < value <= 1:
            raise ValueError(f"{value} is not within (0, 1]")
        return value

    @property
    def tap_length(self) -> float:
        """Path length covered by one tap (m)."""
        return self.delta_t * SPEED_OF_LIGHT


class SimulationConfig(RWModel):
    """Synthetic scene used in place of recorded CIRs."""

    pulse: PulseShape = Field(default_factory=PulseShape)
    noise: NoiseSpec = Field(default_factory=NoiseSpec)
    direct_offset_taps: NonNegativeInt = Field(
        default_factory=lambda: settings.direct_offset_taps
    )
    offset_jitter_taps: NonNegativeInt = 0
    phase_seed: NonNegativeInt = 0
    background: list[Reflector] = Field(
        default_factory=list, description="Static reflectors present in every run."
    )
    targets: list[Reflector] = Field(
        default_factory=list, description="Reflectors of the parked vehicle."
    )
    target_obstacles: list[Rect] = Field(
        default_factory=list, description="Vehicle body blocking other paths."
    )


class ScenarioConfig(RWModel):
    """A site, its processing constants and optionally a synthetic scene."""

    name: str
    description: str = ""
    geometry: SiteGeometry
    constants: ScenarioConstants = Field(default_factory=ScenarioConstants)
    simulation: SimulationConfig | None = None
    truth: str | None = Field(
        default=None, description="Lot occupied in the measurement run."
    )
    reference_d_r: PositiveFloat | None = Field(
        default=None, description="Hand measured reflection path length (m)."
    )
    intervals: dict[str, tuple[float, float]] | None = Field(
        default=None, description="Hand set range intervals replacing computed ones."
    )

    @model_validator(mode="after")
    def check_lot_references(self) -> "ScenarioConfig":
        lots = self.geometry.lots
        if self.truth is not None and self.truth not in lots:
            raise ValueError(f"Truth lot '{self.truth}' is not defined in geometry.lots")
        for lot_id, (d_min, d_max) in (self.intervals or {}).items():
            if lot_id not in lots:
                raise ValueError(f"Interval for unknown lot '{lot_id}'")
            if d_min > d_max:
                raise ValueError(f"Interval for '{lot_id}' has min above max")
        return self
