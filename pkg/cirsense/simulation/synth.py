"""Synthetic CIRs of a point reflector scene."""

import logging
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from cirsense.config import settings
from cirsense.exceptions import ConfigurationError, InvalidParameterError, TruncationError
from cirsense.models.base import Point2D
from cirsense.models.cir import Cir
from cirsense.models.geometry import Rect, SiteGeometry
from cirsense.models.scenario import ScenarioConfig
from cirsense.models.simulation import NoiseSpec, PulseShape, Reflector
from cirsense.processing.geometry import direct_path_length, segment_intersects_rect

from .pulse import pulse_peak, sample_pulse

LOG = logging.getLogger(__name__)

# legs stop this short of their end points, reflectors may sit on an obstacle edge
LEG_CLEARANCE = 1e-6


@dataclass(frozen=True)
class PathComponent:
    """One propagation path of the scene."""

    length: float
    amplitude: float
    phase: float


def path_phase(phase_seed: int, length: float) -> float:
    """Carrier phase of a path, stable for the same path length and seed."""
    rng = np.random.default_rng((phase_seed, round(length * 1e6)))
    return float(rng.uniform(0, 2 * np.pi))


def _leg_blocked(start: Point2D, end: Point2D, obstacles: Sequence[Rect]) -> bool:
    length = math.dist(start, end)
    if length <= 2 * LEG_CLEARANCE:
        return False
    trim = LEG_CLEARANCE / length
    dx, dy = end[0] - start[0], end[1] - start[1]
    first = (start[0] + trim * dx, start[1] + trim * dy)
    last = (end[0] - trim * dx, end[1] - trim * dy)
    return any(segment_intersects_rect(first, last, rect) for rect in obstacles)


def is_shadowed(
    geom: SiteGeometry, reflector: Reflector, obstacles: Sequence[Rect]
) -> bool:
    """True when an obstacle blocks either leg of the single bounce path."""
    return _leg_blocked(geom.tx, reflector.position, obstacles) or _leg_blocked(
        geom.rx, reflector.position, obstacles
    )


def _double_bounce_shadowed(
    geom: SiteGeometry, reflector: Reflector, obstacles: Sequence[Rect]
) -> bool:
    partner = reflector.double_bounce_partner
    return (
        _leg_blocked(geom.tx, reflector.position, obstacles)
        or _leg_blocked(reflector.position, partner, obstacles)
        or _leg_blocked(geom.rx, partner, obstacles)
    )


def scene_components(
    geom: SiteGeometry,
    reflectors: Sequence[Reflector],
    obstacles: Sequence[Rect] = (),
    phase_seed: int = 0,
) -> list[PathComponent]:
    """Direct path plus every unshadowed reflection of the scene."""
    d_p = direct_path_length(geom)
    components = [PathComponent(d_p, 1 / d_p, path_phase(phase_seed, d_p))]
    for reflector in reflectors:
        d_tx = math.dist(geom.tx, reflector.position)
        d_rx = math.dist(reflector.position, geom.rx)
        if is_shadowed(geom, reflector, obstacles):
            LOG.debug("Reflector at %s is shadowed", reflector.position)
        elif d_tx > 0 and d_rx > 0:
            length = d_tx + d_rx
            phase = reflector.phase
            components.append(
                PathComponent(
                    length,
                    reflector.reflectivity / (d_tx * d_rx),
                    path_phase(phase_seed, length) if phase is None else phase,
                )
            )

        partner = reflector.double_bounce_partner
        if partner is None:
            continue
        d_bounce = math.dist(reflector.position, partner)
        d_back = math.dist(partner, geom.rx)
        if _double_bounce_shadowed(geom, reflector, obstacles):
            LOG.debug("Double bounce via %s is shadowed", partner)
        elif d_tx > 0 and d_bounce + d_back > 0:
            length = d_tx + d_bounce + d_back
            components.append(
                PathComponent(
                    length,
                    reflector.reflectivity
                    * reflector.double_bounce_reflectivity
                    / (d_tx * (d_bounce + d_back)),
                    path_phase(phase_seed, length),
                )
            )
    return components


def synth_cir(
    geom: SiteGeometry,
    reflectors: Sequence[Reflector],
    pulse: PulseShape,
    noise: NoiseSpec,
    direct_offset_taps: int,
    *,
    k_taps: int | None = None,
    delta_t: float | None = None,
    obstacles: Sequence[Rect] | None = None,
    phase_seed: int = 0,
    epoch: int = 0,
    rng: np.random.Generator | None = None,
) -> Cir:
    """Sum of pulse shaped paths plus complex white noise.

    The direct path peaks at direct_offset_taps, the other paths follow
    at their excess delay. Noise power is set relative to the direct path
    peak.
    """
    k_taps = settings.k_taps if k_taps is None else k_taps
    delta_t = settings.delta_t if delta_t is None else delta_t
    obstacles = geom.obstacles if obstacles is None else obstacles
    if rng is None:
        rng = np.random.default_rng((noise.seed, epoch))

    d_p = direct_path_length(geom)
    tap_length = delta_t * geom.c
    taps = np.zeros(k_taps, dtype=np.complex128)
    for component in scene_components(geom, reflectors, obstacles, phase_seed):
        position = direct_offset_taps + (component.length - d_p) / tap_length
        first, samples = sample_pulse(pulse, delta_t, position)
        if first < 0 or first + samples.size > k_taps:
            raise TruncationError(
                f"Path of {component.length:.2f} m at tap {position:.1f} does not fit "
                f"into a record of {k_taps} taps"
            )
        taps[first : first + samples.size] += (
            component.amplitude * np.exp(1j * component.phase) * samples
        )

    if not noise.noiseless:
        sigma = pulse_peak(pulse, delta_t) / d_p / 10 ** (noise.snr_db / 20)
        taps += (
            rng.standard_normal(k_taps) + 1j * rng.standard_normal(k_taps)
        ) * (sigma / math.sqrt(2))
    return Cir(taps=taps, delta_t=delta_t, epoch=epoch, tx_id=geom.tx_id, rx_id=geom.rx_id)


def synth_stream(
    scenario: ScenarioConfig,
    epochs: int,
    noise: NoiseSpec | None = None,
    *,
    empty: bool = False,
) -> list[Cir]:
    """Simulate consecutive epochs of a scenario.

    The empty scene holds only the background reflectors and is used as
    calibration. Every epoch draws its own noise from (seed, epoch, scene).
    """
    if epochs < 1:
        raise InvalidParameterError(f"Need at least one epoch, got {epochs}")
    simulation = scenario.simulation
    if simulation is None:
        raise ConfigurationError(f"Scenario '{scenario.name}' has no simulation section")
    noise = simulation.noise if noise is None else noise
    geom = scenario.geometry
    constants = scenario.constants

    reflectors = list(simulation.background)
    obstacles = list(geom.obstacles)
    if not empty:
        reflectors += simulation.targets
        obstacles += simulation.target_obstacles

    LOG.info(
        "Simulating %d %s epochs of %s at %s dB",
        epochs,
        "empty" if empty else "occupied",
        scenario.name,
        noise.snr_db,
    )
    stream = []
    for epoch in range(epochs):
        rng = np.random.default_rng((noise.seed, epoch, int(empty)))
        offset = simulation.direct_offset_taps
        if simulation.offset_jitter_taps > 0:
            jitter = simulation.offset_jitter_taps
            offset += int(rng.integers(-jitter, jitter + 1))
        stream.append(
            synth_cir(
                geom,
                reflectors,
                simulation.pulse,
                noise,
                offset,
                k_taps=constants.k_taps,
                delta_t=constants.delta_t,
                obstacles=obstacles,
                phase_seed=simulation.phase_seed,
                epoch=epoch,
                rng=rng,
            )
        )
    return stream
