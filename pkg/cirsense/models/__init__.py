"""Cirsense data models."""
