"""Closed-form frequency-domain Green functions of the three-layer medium.

The medium consists of half spaces with velocities v1 (x < 0) and
v3 (x > d) separated by a spacer with velocity v2.  After Fourier
transforming along the interface plane, every fixed (omega, k_par)
reduces to a one-dimensional scattering problem in the perpendicular
coordinate.  This module evaluates the outgoing (retarded) Green
function of that problem in closed form, together with the composite
transmission and reflection amplitudes of the spacer and the flux
probabilities they imply.

Closed forms are available whenever the source or the observation point
lies in the first layer, which covers every configuration used by the
space-time propagator (sources start on the left).  Other region pairs
raise UnsupportedRegionError.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CutoffError, EvanescentRegimeError, PoleError, UnsupportedRegionError
from .media import (
    SpectralPoint,
    TrilayerMedium,
    layer_of,
    perp_wavevector_array,
    principal_sqrt,
)

__all__ = [
    "AmplitudeSet",
    "amplitude_set",
    "green_retarded",
    "green_advanced",
    "green_profile",
    "probabilities",
]

_COMPONENTS = ("full", "direct", "reflected")


@dataclass(frozen=True)
class AmplitudeSet:
    """Composite amplitudes of the spacer for one spectral point.

    t is the transmission into the third layer, t_prime and r_prime the
    right- and left-moving amplitudes inside the spacer, r the reflection
    back into the first layer, and denom the common resonance denominator
    whose zeros are the guided modes of the spacer.
    """

    t: complex
    t_prime: complex
    r_prime: complex
    r: complex
    denom: complex


def _raw_amplitudes(kp1, kp2, kp3, d):
    """Amplitudes from the perpendicular wave vectors; works on arrays."""
    phase = np.exp(2j * kp2 * d)
    denom = (kp1 + kp2) * (kp3 + kp2) - (kp1 - kp2) * (kp3 - kp2) * phase
    s1 = principal_sqrt(kp1)
    s2 = principal_sqrt(kp2)
    s3 = principal_sqrt(kp3)
    t = 4.0 * s1 * s3 * kp2 * np.exp(1j * kp2 * d) / denom
    t_prime = 2.0 * s1 * s2 * (kp3 + kp2) / denom
    r_prime = 2.0 * s1 * s2 * (kp2 - kp3) * phase / denom
    r = ((kp1 - kp2) * (kp3 + kp2) - (kp1 + kp2) * (kp3 - kp2) * phase) / denom
    return t, t_prime, r_prime, r, denom


def amplitude_set(medium: TrilayerMedium, spectral: SpectralPoint) -> AmplitudeSet:
    """Composite spacer amplitudes at one spectral point.

    Raises PoleError when the spectral point sits exactly on a guided
    mode of the spacer, where the amplitudes diverge.
    """
    t, t_prime, r_prime, r, denom = _raw_amplitudes(
        spectral.kperp1, spectral.kperp2, spectral.kperp3, medium.d
    )
    if denom == 0:
        raise PoleError(
            f"guided mode at omega={spectral.omega!r}, k_par={spectral.k_par!r}: "
            "amplitude denominator vanishes"
        )
    return AmplitudeSet(
        t=complex(t),
        t_prime=complex(t_prime),
        r_prime=complex(r_prime),
        r=complex(r),
        denom=complex(denom),
    )


def _green_source_first(x, x_src, medium, kp1, kp2, kp3, component):
    """Green function with the source in the first layer.

    kp1, kp2, kp3 may be scalars or equal-shape arrays; the result has
    the same shape.  `component` splits the first-layer value into its
    direct and reflected parts and is only defined there.
    """
    if component not in _COMPONENTS:
        raise ValueError(f"component must be one of {_COMPONENTS}, got {component!r}")
    t, t_prime, r_prime, r, denom = _raw_amplitudes(kp1, kp2, kp3, medium.d)
    if np.any(denom == 0):
        raise PoleError("spectral point sits on a guided mode of the spacer")
    region = layer_of(x, medium)
    if region == 1:
        if np.any(kp1 == 0):
            raise CutoffError("first-layer perpendicular wave vector vanishes")
        pref = 1.0 / (2j * medium.v1**2 * kp1)
        direct = np.exp(1j * kp1 * abs(x - x_src))
        reflected = r * np.exp(-1j * kp1 * (x + x_src))
        if component == "direct":
            return pref * direct
        if component == "reflected":
            return pref * reflected
        return pref * (direct + reflected)
    if component != "full":
        raise ValueError("direct/reflected splitting is defined only in the first layer")
    source_phase = np.exp(-1j * kp1 * x_src)
    if region == 2:
        root = principal_sqrt(kp1) * principal_sqrt(kp2)
        if np.any(root == 0):
            raise CutoffError("a perpendicular wave vector vanishes in the spacer channel")
        pref = 1.0 / (2j * medium.v1 * medium.v2 * root)
        standing = np.exp(1j * kp2 * x) * t_prime + np.exp(-1j * kp2 * x) * r_prime
        return pref * standing * source_phase
    root = principal_sqrt(kp1) * principal_sqrt(kp3)
    if np.any(root == 0):
        raise CutoffError("a perpendicular wave vector vanishes in the transmission channel")
    pref = 1.0 / (2j * medium.v1 * medium.v3 * root)
    return pref * t * np.exp(1j * kp3 * (x - medium.d)) * source_phase


def _oriented(x: float, x_prime: float, medium: TrilayerMedium) -> tuple[float, float]:
    """Order the two points so the source sits in the first layer.

    The Green function is symmetric under exchange of its arguments, so
    a configuration with the observation point in the first layer is
    evaluated with the roles swapped.
    """
    obs = layer_of(x, medium)
    src = layer_of(x_prime, medium)
    if src == 1:
        return x, x_prime
    if obs == 1:
        return x_prime, x
    raise UnsupportedRegionError(
        f"no closed form for observation in layer {obs} with source in layer {src}; "
        "at least one point must lie in the first layer"
    )


def green_retarded(
    x: float, x_prime: float, medium: TrilayerMedium, spectral: SpectralPoint
) -> complex:
    """Outgoing-wave Green function G(x, x_prime) at one spectral point."""
    xo, xs = _oriented(x, x_prime, medium)
    value = _green_source_first(
        xo, xs, medium, spectral.kperp1, spectral.kperp2, spectral.kperp3, "full"
    )
    return complex(value)


def green_advanced(
    x: float, x_prime: float, medium: TrilayerMedium, spectral: SpectralPoint
) -> complex:
    """Incoming-wave Green function, the conjugate of the outgoing one."""
    return complex(np.conj(green_retarded(x, x_prime, medium, spectral)))


def green_profile(
    x: float,
    x_src: float,
    medium: TrilayerMedium,
    omegas: np.ndarray,
    k_par: float = 0.0,
    component: str = "full",
) -> np.ndarray:
    """Outgoing Green function over an array of frequencies.

    Evaluates G(x, x_src) at fixed geometry for each omega in `omegas`,
    which is the shape the frequency quadratures consume.  `component`
    selects the direct or reflected part and requires both points in the
    first layer.
    """
    om = np.asarray(omegas, dtype=float)
    xo, xs = _oriented(x, x_src, medium)
    if component != "full" and layer_of(x_src, medium) != 1:
        raise ValueError("direct/reflected splitting is defined only in the first layer")
    kp1 = perp_wavevector_array(om, k_par, medium.v1)
    kp2 = perp_wavevector_array(om, k_par, medium.v2)
    kp3 = perp_wavevector_array(om, k_par, medium.v3)
    return np.asarray(_green_source_first(xo, xs, medium, kp1, kp2, kp3, component))


def probabilities(medium: TrilayerMedium, spectral: SpectralPoint) -> tuple[float, float]:
    """Transmission and reflection probabilities (|t|**2, |r|**2).

    Defined for propagating spectral points only, where both add up to
    one.  Evanescent points raise EvanescentRegimeError and points at a
    channel cutoff raise CutoffError.
    """
    kps = (spectral.kperp1, spectral.kperp2, spectral.kperp3)
    if any(k.imag != 0.0 for k in kps):
        raise EvanescentRegimeError(
            "probabilities need all three layers propagating; "
            f"got perpendicular wave vectors {kps!r}"
        )
    k1, k2, k3 = (k.real for k in kps)
    if k1 == 0.0 or k2 == 0.0 or k3 == 0.0:
        raise CutoffError("a perpendicular wave vector vanishes; probabilities undefined")
    s2 = math.sin(k2 * medium.d) ** 2
    mismatch = (k1**2 - k2**2) * (k3**2 - k2**2) * s2
    den = (k1 + k3) ** 2 * k2**2 + mismatch
    t_prob = 4.0 * k1 * k2**2 * k3 / den
    r_prob = (k2**2 * (k1 - k3) ** 2 + mismatch) / den
    return t_prob, r_prob
