"""Typed errors raised by the layered-wave solvers.

Numerical edge cases (channel cutoffs, vanishing scattering denominators,
unsupported source/receiver placements) raise a dedicated exception rather
than returning an infinity or a silent NaN, so callers can distinguish a
physics boundary from a programming mistake.
"""

from __future__ import annotations


class LayerwaveError(Exception):
    """Base class for all errors raised by this package."""


class CutoffError(LayerwaveError):
    """A perpendicular wave vector vanishes, so a 1/k_perp factor blows up.

    This happens exactly at a channel cutoff, where the frequency equals a
    layer velocity times the lateral wave number.
    """


class DegenerateSpectralPointError(LayerwaveError):
    """The two perpendicular wave vectors at an interface sum to zero."""


class PoleError(LayerwaveError):
    """A scattering denominator vanishes at the requested spectral point."""


class EvanescentRegimeError(LayerwaveError):
    """A real-valued result was requested where a wave vector is complex."""


class UnsupportedRegionError(LayerwaveError):
    """The source/receiver placement is outside the implemented region pairs."""


class NonFiniteIntegrandError(LayerwaveError):
    """An integrand returned a non-finite value at a quadrature node."""

    def __init__(self, message: str, node: float | None = None):
        super().__init__(message)
        self.node = node


class ConfigError(LayerwaveError):
    """A run configuration is missing, malformed, or inconsistent."""


class AccuracyShortfallWarning(UserWarning):
    """A quadrature error estimate exceeded the requested tolerance."""


class GridResolutionWarning(UserWarning):
    """A sampled field grid is too coarse for the carrier frequency."""
