"""Exception types raised across the library."""

from __future__ import annotations


class SpecfidError(Exception):
    """Base class for all library errors."""


class NonConvergence(SpecfidError):
    """The eigensolver failed to converge."""


class DomainError(SpecfidError):
    """An input lies outside the mathematical domain of the operation."""


class DimensionMismatch(SpecfidError):
    """Matrix or vector dimensions are incompatible."""


class ParamError(SpecfidError):
    """A scalar parameter is outside its allowed range."""


class NormError(SpecfidError):
    """A vector violates a required norm bound."""


class ZeroVector(SpecfidError):
    """A state vector with zero norm cannot be normalized."""


class SupportError(SpecfidError):
    """A required operator-support containment does not hold."""


class NormalizationError(SpecfidError):
    """A probability vector or density matrix is not normalized."""


class ToleranceError(SpecfidError):
    """A reproduction check deviated beyond its tolerance, signalling a bug."""


class UnknownProperty(SpecfidError):
    """The requested property id is not registered with the verifier."""
