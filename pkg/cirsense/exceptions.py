"""Manages possible exceptions."""

from pathlib import Path


class CirsenseError(Exception):
    """Parent class for all cirsense errors."""


class ConfigurationError(CirsenseError):
    """Invalid configuration or scenario content."""


class InvalidParameterError(CirsenseError, ValueError):
    """An argument is outside its documented range."""


class DataError(CirsenseError):
    """Parent class for errors caused by the processed data."""


class RejectedInputError(DataError):
    """Input contains non-finite values."""


class NoLeadingEdgeError(DataError):
    """The profile has no strictly positive value to anchor on."""


class AlignmentError(DataError):
    """Two profiles could not be synchronized at their leading edges."""


class DegenerateProfileError(DataError):
    """An all-zero profile reached an operation that needs a signal."""


class StreamInconsistencyError(DataError):
    """Profiles within one stream disagree in length or time step."""


class InsufficientDataError(DataError):
    """Not enough epochs to run the requested stage."""


class InfeasibleRangeError(DataError):
    """A bistatic range shorter than the direct path."""


class PreDirectPathError(DataError):
    """A tap before the leading edge was mapped to a range."""


class UnknownLotError(DataError):
    """The lot id is not part of the site geometry."""

    def __init__(self, message: str, lot_id: str):
        super().__init__(message)

        self.lot_id = lot_id


class CoverageError(DataError):
    """The heatmap grid does not cover the parking lots."""


class TruncationError(DataError):
    """A simulated path does not fit into the CIR record."""


class SchemaError(DataError):
    """A record does not have the configured shape."""


class CirFileError(DataError):
    """A line in a CIR record file could not be parsed."""

    def __init__(self, message: str, line_number: int, path: Path | None = None):
        super().__init__(f"{message} (line {line_number})")

        self.line_number = line_number
        self.path = path


class ConstantMismatchError(DataError):
    """Calibration and measurement were recorded with different constants."""


class EmptyReportsError(DataError):
    """Evaluation was requested without any report."""
