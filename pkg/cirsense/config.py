"""Cirsense default configuration."""

import os
from pathlib import Path
from typing import Tuple, Type

from pydantic import Field, field_validator, model_validator
from pydantic_settings import (
    BaseSettings,
    PydanticBaseSettingsSource,
    SettingsConfigDict,
    TomlConfigSettingsSource,
)

from cirsense.constants import DEFAULT_DELTA_T, DEFAULT_K_TAPS, UWB_BANDWIDTH

# read default config and user defined config
config_file = [Path(__file__).parent.joinpath("config.toml")]  # built in config file

CUSTOM_CONFIG_ENV_NAME = "CIRSENSE_CONFIG_FILE"
custom_config = os.getenv(CUSTOM_CONFIG_ENV_NAME)
if custom_config is not None:
    user_cnf = Path(custom_config)
    if user_cnf.exists():
        config_file.append(user_cnf)


class Settings(BaseSettings):
    """Cirsense settings.

    Process wide defaults. Scenario files override them per scenario.
    """

    k_taps: int = Field(
        default=DEFAULT_K_TAPS, ge=16, description="Number of complex taps per CIR."
    )
    delta_t: float = Field(
        default=DEFAULT_DELTA_T, gt=0, description="Duration of one tap in seconds."
    )
    alpha: float = Field(default=0.3, description="EWMA weighting factor.")
    warmup_k: int = Field(
        default=5, ge=1, description="Epochs averaged to initialize the EWMA."
    )
    leading_edge_fraction: float = Field(
        default=0.5, description="Fraction of the maximum marking the leading edge."
    )
    guard_taps: int = Field(
        default=3, ge=0, description="Taps after the leading edge ignored by detection."
    )
    min_amplitude: float = Field(
        default=0.2,
        ge=0,
        description="Smallest normalized residual accepted as a reflection.",
    )
    cell_size: float = Field(default=0.1, gt=0, description="Heatmap cell size in m.")
    fill_radius: int = Field(
        default=3, ge=0, description="Nearest neighbour fill radius in cells."
    )
    pulse_width: float = Field(
        default=1 / UWB_BANDWIDTH, gt=0, description="Simulated pulse width in s."
    )
    direct_offset_taps: int = Field(
        default=32, ge=0, description="Simulated tap index of the direct path."
    )
    file_precision: int = Field(
        default=9, ge=1, le=17, description="Significant digits in CIR files."
    )

    model_config = SettingsConfigDict(
        env_prefix="CIRSENSE_",
        env_file_encoding="utf-8",
        toml_file=config_file,
        env_nested_delimiter="__",
    )

    @field_validator("alpha", "leading_edge_fraction")
    @classmethod
    def validate_fraction(cls, value: float) -> float:
        """Validate that a number falls within (0, 1]."""

        if not 0 < value <= 1:
            raise ValueError(f"{value} is not within (0, 1]")
        return value

    @model_validator(mode="after")
    def check_direct_offset(self) -> "Settings":
        """Check that the simulated direct path fits into the record."""
        if self.direct_offset_taps >= self.k_taps:
            raise ValueError(
                f"direct_offset_taps ({self.direct_offset_taps}) must be below k_taps ({self.k_taps})"
            )
        return self

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: Type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> Tuple[PydanticBaseSettingsSource, ...]:
        toml_settings = TomlConfigSettingsSource(settings_cls)
        return (
            init_settings,
            env_settings,
            dotenv_settings,
            file_secret_settings,
            toml_settings,
        )


settings = Settings()
