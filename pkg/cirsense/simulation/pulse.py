"""Transmit pulse envelopes sampled at tap resolution."""

import math
from functools import lru_cache

import numpy as np

from cirsense.constants import PULSE_SUPPORT_WIDTHS, RAISED_COSINE_ROLLOFF
from cirsense.models.simulation import PulseKind, PulseShape


def _gaussian(t: np.ndarray, width: float) -> np.ndarray:
    # amplitude falls to 1/sqrt(2) at +-width/2
    sigma = width / (2 * math.sqrt(math.log(2)))
    return np.exp(-(t**2) / (2 * sigma**2))


def _raised_cosine(t: np.ndarray, width: float) -> np.ndarray:
    beta = RAISED_COSINE_ROLLOFF
    x = t / width
    denominator = 1 - (2 * beta * x) ** 2
    singular = np.isclose(denominator, 0.0)
    safe = np.where(singular, 1.0, denominator)
    values = np.sinc(x) * np.cos(np.pi * beta * x) / safe
    return np.where(singular, np.pi / 4 * np.sinc(1 / (2 * beta)), values)


def envelope(pulse: PulseShape, t: np.ndarray) -> np.ndarray:
    """Unnormalized pulse s(t), zero beyond the support."""
    kind = PulseKind(pulse.kind)
    if kind == PulseKind.GAUSSIAN:
        values = _gaussian(t, pulse.width)
    else:
        values = _raised_cosine(t, pulse.width)
    return np.where(np.abs(t) <= PULSE_SUPPORT_WIDTHS * pulse.width, values, 0.0)


def support_taps(pulse: PulseShape, delta_t: float) -> float:
    """Half width of the pulse support in taps."""
    return PULSE_SUPPORT_WIDTHS * pulse.width / delta_t


@lru_cache(maxsize=32)
def _energy_scale(kind: str, width: float, delta_t: float) -> float:
    pulse = PulseShape(kind=kind, width=width)
    half = math.floor(support_taps(pulse, delta_t))
    samples = envelope(pulse, np.arange(-half, half + 1) * delta_t)
    return 1 / math.sqrt(float(np.sum(samples**2)))


def energy_scale(pulse: PulseShape, delta_t: float) -> float:
    """Factor giving the pulse sampled on the tap grid unit energy."""
    return _energy_scale(str(pulse.kind), pulse.width, delta_t)


def pulse_peak(pulse: PulseShape, delta_t: float) -> float:
    """Largest sample of the unit energy pulse."""
    return energy_scale(pulse, delta_t)


def sample_pulse(
    pulse: PulseShape, delta_t: float, position: float
) -> tuple[int, np.ndarray]:
    """Sample a unit energy pulse centred at a fractional tap position.

    Returns the first tap index of the support and the samples from there on.
    """
    half = support_taps(pulse, delta_t)
    first = math.ceil(position - half)
    last = math.floor(position + half)
    offsets = np.arange(first, last + 1) - position
    return first, envelope(pulse, offsets * delta_t) * energy_scale(pulse, delta_t)
