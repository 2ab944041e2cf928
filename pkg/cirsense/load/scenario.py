"""Load scenario configuration files."""

import logging
import tomllib
from pathlib import Path

from pydantic import ValidationError

from cirsense.exceptions import ConfigurationError
from cirsense.models.scenario import ScenarioConfig

LOG = logging.getLogger(__name__)

SCENARIO_DIR = Path(__file__).parent.parent.joinpath("scenarios")


def builtin_scenarios() -> dict[str, Path]:
    """Bundled scenarios by name, e.g. side-p2 for side_p2.toml."""
    return {
        path.stem.replace("_", "-"): path for path in sorted(SCENARIO_DIR.glob("*.toml"))
    }


def resolve_scenario(name_or_path: str | Path) -> Path:
    path = Path(name_or_path)
    if path.exists():
        return path
    bundled = builtin_scenarios()
    if str(name_or_path) in bundled:
        return bundled[str(name_or_path)]
    raise ConfigurationError(
        f"No scenario file or bundled scenario named '{name_or_path}', "
        f"bundled are: {', '.join(bundled)}"
    )


def parse_scenario(content: dict, source: str = "<dict>") -> ScenarioConfig:
    try:
        return ScenarioConfig.model_validate(content)
    except ValidationError as err:
        LOG.error("Invalid scenario %s: %s", source, err)
        raise ConfigurationError(f"Invalid scenario {source}: {err}") from err


def load_scenario(name_or_path: str | Path) -> ScenarioConfig:
    """Read a scenario TOML file, or a bundled scenario by name."""
    path = resolve_scenario(name_or_path)
    try:
        with open(path, "rb") as scenario_fh:
            content = tomllib.load(scenario_fh)
    except tomllib.TOMLDecodeError as err:
        raise ConfigurationError(f"Could not parse {path}: {err}") from err
    scenario = parse_scenario(content, str(path))
    LOG.debug("Loaded scenario %s from %s", scenario.name, path)
    return scenario
