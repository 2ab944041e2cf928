from pathlib import Path

import pytest

from cirsense.config import settings
from cirsense.exceptions import ConfigurationError
from cirsense.load.scenario import builtin_scenarios, load_scenario, parse_scenario


def test_bundled_scenarios():
    """Ensure that the bundled scenarios are found by name."""
    assert {"side-p2", "side-p3", "wall-p2"} <= set(builtin_scenarios())


def test_load_bundled_scenario(side_p2):
    """Ensure that a bundled scenario is loaded with its lots, intervals and scene."""
    assert side_p2.truth == "P2"
    assert side_p2.reference_d_r == 6.8
    assert list(side_p2.geometry.lots) == ["P1", "P2", "P3"]
    assert side_p2.intervals["P2"] == (6.0, 11.0)
    assert side_p2.constants.k_taps == 992
    assert side_p2.simulation.direct_offset_taps == 32
    assert len(side_p2.simulation.targets) == 1


def test_load_scenario_from_path(tmp_path: Path):
    """Ensure that missing constants default to the settings."""
    path = tmp_path / "site.toml"
    path.write_text(
        'name = "site"\n'
        "[geometry]\n"
        "tx = [0.0, 0.0]\n"
        "rx = [3.0, 0.0]\n"
        "[geometry.lots.A]\n"
        "x_min = 0.0\ny_min = 1.0\nx_max = 3.0\ny_max = 4.0\n"
        "[constants]\n"
        "alpha = 0.5\n"
    )

    scenario = load_scenario(path)

    assert scenario.name == "site"
    assert scenario.constants.alpha == 0.5
    assert scenario.constants.warmup_k == settings.warmup_k
    assert scenario.simulation is None


def test_unknown_scenario():
    """Ensure that an unknown name lists the bundled scenarios."""
    with pytest.raises(ConfigurationError, match="side-p2"):
        load_scenario("no-such-site")


def test_unparsable_scenario(tmp_path: Path):
    path = tmp_path / "broken.toml"
    path.write_text("name = \n")

    with pytest.raises(ConfigurationError):
        load_scenario(path)


def test_truth_must_be_a_lot():
    """Ensure that the truth lot has to exist."""
    content = {
        "name": "site",
        "geometry": {"tx": [0, 0], "rx": [3, 0], "lots": {}},
        "truth": "P9",
    }

    with pytest.raises(ConfigurationError):
        parse_scenario(content)


def test_alpha_must_be_a_fraction():
    content = {
        "name": "site",
        "geometry": {"tx": [0, 0], "rx": [3, 0]},
        "constants": {"alpha": 1.5},
    }

    with pytest.raises(ConfigurationError):
        parse_scenario(content)


def test_default_settings():
    """Ensure that the defaults are 992 taps of about 30 cm."""
    assert settings.k_taps == 992
    assert settings.delta_t * 299792458 == pytest.approx(0.30, abs=0.01)
