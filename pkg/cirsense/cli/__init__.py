"""Cirsense command line arguments package."""

from .base import cli
