"""Magnitudes, normalization and leading edge synchronization of CIRs."""

import logging

import numpy as np

from cirsense.exceptions import (
    AlignmentError,
    InvalidParameterError,
    NoLeadingEdgeError,
    SchemaError,
)
from cirsense.models.cir import Cir, MagnitudeProfile

LOG = logging.getLogger(__name__)


def check_length(cir: Cir, k_taps: int) -> Cir:
    """Validate that a CIR has the configured number of taps."""
    if cir.k_taps != k_taps:
        raise SchemaError(
            f"CIR epoch {cir.epoch} has {cir.k_taps} taps, expected {k_taps}"
        )
    return cir


def check_fraction(fraction: float) -> float:
    if not 0 < fraction <= 1:
        raise InvalidParameterError(f"Leading edge fraction {fraction} is not within (0, 1]")
    return fraction


def magnitude(cir: Cir) -> MagnitudeProfile:
    """Calculate |h| of every tap."""
    return MagnitudeProfile(values=np.abs(cir.taps), delta_t=cir.delta_t)


def normalize(profile: MagnitudeProfile) -> MagnitudeProfile:
    """Scale a profile to a unit maximum.

    All-zero profiles cannot be scaled; they are returned unchanged and
    flagged as degenerate so later stages can reject them.
    """
    peak = float(profile.values.max())
    if peak == 0:
        LOG.warning("Normalizing an all-zero profile, flagging it degenerate")
        return profile.model_copy(update={"normalized": True, "degenerate": True})
    return MagnitudeProfile(
        values=profile.values / peak,
        delta_t=profile.delta_t,
        leading_edge=profile.leading_edge,
        normalized=True,
    )


def leading_edge_index(profile: MagnitudeProfile, fraction: float) -> int:
    """First tap reaching the given fraction of the profile maximum.

    This is the rising flank of the first dominant peak, normally the
    direct path.
    """
    check_fraction(fraction)
    peak = float(profile.values.max())
    if peak <= 0:
        raise NoLeadingEdgeError("Profile has no positive value to anchor on")
    return int(np.argmax(profile.values >= fraction * peak))


def _shift_values(values: np.ndarray, taps: int) -> np.ndarray:
    shifted = np.zeros_like(values)
    if taps == 0:
        shifted[:] = values
    elif abs(taps) < values.size:
        if taps > 0:
            shifted[taps:] = values[:-taps]
        else:
            shifted[:taps] = values[-taps:]
    return shifted


def shift(profile: MagnitudeProfile, taps: int) -> MagnitudeProfile:
    """Delay a profile by a whole number of taps, zero padding the vacated end."""
    values = _shift_values(profile.values, taps)
    leading_edge = None
    if profile.leading_edge is not None and 0 <= profile.leading_edge + taps < values.size:
        leading_edge = profile.leading_edge + taps
    return MagnitudeProfile(
        values=values,
        delta_t=profile.delta_t,
        leading_edge=leading_edge,
        normalized=profile.normalized and float(values.max()) == 1.0,
    )


def align(
    profile: MagnitudeProfile, reference: MagnitudeProfile, fraction: float
) -> MagnitudeProfile:
    """Shift a profile so its leading edge coincides with the reference's."""
    if profile.is_zero or reference.is_zero:
        raise AlignmentError("Cannot align an all-zero profile")
    if profile.k_taps != reference.k_taps:
        raise AlignmentError(
            f"Cannot align profiles of {profile.k_taps} and {reference.k_taps} taps"
        )
    reference_edge = leading_edge_index(reference, fraction)
    offset = reference_edge - leading_edge_index(profile, fraction)
    LOG.debug("Aligning profile by %d taps to leading edge %d", offset, reference_edge)
    aligned = shift(profile, offset)
    return aligned.model_copy(update={"leading_edge": reference_edge})
