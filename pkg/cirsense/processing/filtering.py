"""Temporal smoothing of magnitude streams and background subtraction."""

import logging
from typing import Sequence

import numpy as np

from cirsense.exceptions import (
    InsufficientDataError,
    InvalidParameterError,
    StreamInconsistencyError,
)
from cirsense.models.cir import MagnitudeProfile
from cirsense.models.filtering import EwmaState, FilterMode, SubtractedProfile

from .profile import align, normalize

LOG = logging.getLogger(__name__)


def _check_compatible(first: MagnitudeProfile, other: MagnitudeProfile) -> None:
    if other.k_taps != first.k_taps or other.delta_t != first.delta_t:
        raise StreamInconsistencyError(
            f"Profile with {other.k_taps} taps of {other.delta_t} s does not match "
            f"stream of {first.k_taps} taps of {first.delta_t} s"
        )


def check_stream(stream: Sequence[MagnitudeProfile]) -> None:
    """Raise if the profiles of a stream differ in length or time step."""
    for profile in stream[1:]:
        _check_compatible(stream[0], profile)


def ewma_init(profiles: Sequence[MagnitudeProfile], alpha: float) -> EwmaState:
    """Start the average from the arithmetic mean of the warm-up epochs."""
    if len(profiles) == 0:
        raise InsufficientDataError("At least one epoch is needed to start the average")
    check_stream(profiles)
    # incremental mean, exact for constant input
    mean = np.array(profiles[0].values, dtype=np.float64)
    for count, profile in enumerate(profiles[1:], start=2):
        mean = mean + (profile.values - mean) / count
    current = MagnitudeProfile(values=mean, delta_t=profiles[0].delta_t)
    return EwmaState(current=current, alpha=alpha, epochs_seen=len(profiles))


def ewma_update(state: EwmaState, h: MagnitudeProfile) -> EwmaState:
    """Advance the average by one epoch: z_t = alpha h_t + (1 - alpha) z_{t-1}."""
    previous = state.current
    _check_compatible(previous, h)
    values = previous.values + state.alpha * (h.values - previous.values)
    return EwmaState(
        current=MagnitudeProfile(values=values, delta_t=previous.delta_t),
        alpha=state.alpha,
        epochs_seen=state.epochs_seen + 1,
    )


def ewma_run(
    stream: Sequence[MagnitudeProfile], alpha: float, warmup_k: int
) -> list[MagnitudeProfile]:
    """Filter a whole stream.

    The first output is the mean of the first warmup_k epochs, every later
    epoch applies one EWMA update, so n epochs give n - warmup_k + 1 outputs.
    """
    if warmup_k < 1:
        raise InvalidParameterError(f"Warm-up length must be positive, got {warmup_k}")
    if len(stream) < warmup_k:
        raise InsufficientDataError(
            f"Stream of {len(stream)} epochs is shorter than the warm-up of {warmup_k}"
        )
    check_stream(stream)
    state = ewma_init(stream[:warmup_k], alpha)
    outputs = [state.current]
    for profile in stream[warmup_k:]:
        state = ewma_update(state, profile)
        outputs.append(state.current)
    LOG.debug("Filtered %d epochs into %d outputs", len(stream), len(outputs))
    return outputs


def identity_run(stream: Sequence[MagnitudeProfile]) -> list[MagnitudeProfile]:
    """Unfiltered mode, every epoch is passed on unchanged."""
    if len(stream) == 0:
        raise InsufficientDataError("Empty stream")
    check_stream(stream)
    return list(stream)


def filter_offset(mode: FilterMode, warmup_k: int) -> int:
    """Index of the input epoch that produced the first filter output."""
    return warmup_k - 1 if mode == FilterMode.FILTERED else 0


def filter_stream(
    stream: Sequence[MagnitudeProfile], mode: FilterMode, alpha: float, warmup_k: int
) -> list[MagnitudeProfile]:
    if mode == FilterMode.FILTERED:
        return ewma_run(stream, alpha, warmup_k)
    return identity_run(stream)


def background_subtract(
    measured: MagnitudeProfile, reference: MagnitudeProfile, fraction: float
) -> SubtractedProfile:
    """Remove the static scene: s = |z1 - z0| after alignment and normalization."""
    aligned = normalize(align(measured, reference, fraction))
    anchor = normalize(align(reference, reference, fraction))
    return SubtractedProfile(
        values=np.abs(aligned.values - anchor.values),
        delta_t=reference.delta_t,
        leading_edge=anchor.leading_edge,
    )
