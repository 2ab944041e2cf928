"""Synthetic CIR generation."""
