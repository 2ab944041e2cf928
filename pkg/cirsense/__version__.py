"""Cirsense version info."""

VERSION = "0.1.0"
