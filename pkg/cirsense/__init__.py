"""Multipath-assisted occupancy detection from channel impulse responses."""
