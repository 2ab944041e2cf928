"""Loaders for scenario files."""
