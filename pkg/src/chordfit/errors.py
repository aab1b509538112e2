"""Exception types shared across the package."""

from __future__ import annotations


class ChordfitError(Exception):
    """Base class for all chordfit errors."""


class ModelDomainError(ChordfitError):
    """A spectral model carries non-finite or out-of-domain parameters."""


class WidthBelowInstrumentError(ChordfitError):
    """Fitted line width does not exceed the instrumental width."""


class FlatSpectrumError(ChordfitError):
    """Too few local maxima above the baseline estimate to seed a fit."""


class ShapeError(ChordfitError):
    """Mismatched lengths between model, grid, and data arrays."""


class SingularWidthError(ChordfitError):
    """A line width of zero makes the Jacobian singular."""


class BadInitialModelError(ChordfitError):
    """Initial model or data yields a non-finite residual."""


class StagnationError(ChordfitError):
    """Damping escalated past its ceiling without an acceptable step."""


class DegenerateFitError(ChordfitError):
    """Normal matrix is singular; covariance unavailable."""


class EmptyInputError(ChordfitError):
    """Discharge input contains no chord stanza."""


class ParseError(ChordfitError):
    """Malformed input text; carries the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class MixedChordError(ChordfitError):
    """Fit output records for one file span more than one chord."""


class UnschedulableError(ChordfitError):
    """A task's memory request exceeds what any single node offers."""


class NothingToStoreError(ChordfitError):
    """Reference generation found no fit output files."""


class DegenerateTimingError(ChordfitError):
    """Component breakdown requested over zero total time."""


class BenchmarkAborted(ChordfitError):
    """A benchmark trial failed; completed trial times are attached."""

    def __init__(self, message: str, completed: list[float]):
        self.completed = list(completed)
        super().__init__(message)
