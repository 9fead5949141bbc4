"""Green function of the three-layer medium built by multiple scattering.

This is the second, independent route to the trilayer Green function.
Each interface carries the exact step T-matrices from
`step_scattering`; the spacer couples them through the free Green
function across its width, and summing the resulting bounce series in
closed form gives composite amplitudes for the whole structure.  The
assembled Green function must agree with the closed forms in
`trilayer_green` at every spectral point, which the verification suite
checks; the two modules deliberately share no amplitude code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CutoffError, PoleError, UnsupportedRegionError
from .media import SpectralPoint, TrilayerMedium, layer_of
from .step_scattering import StepContext, t_matrix

__all__ = [
    "free_green",
    "CompositeAmplitudes",
    "composite_amplitudes",
    "assembled_green",
]

_LAYER_BOUNDS = {
    1: (-math.inf, 0.0),
    2: (0.0, None),
    3: (None, math.inf),
}


def free_green(
    x: float, x_prime: float, layer: int, medium: TrilayerMedium, spectral: SpectralPoint
) -> complex:
    """Outgoing free Green function of one layer's homogeneous medium.

        g0(x, x') = exp(i k |x - x'|) / (2 i v**2 k)

    with k the layer's perpendicular wave vector.  Both points must lie
    in the layer; the interface coordinates 0 and d count as belonging
    to every layer they bound, since the assembly evaluates g0 there.
    """
    lo, hi = _LAYER_BOUNDS[layer]
    if lo is None:
        lo = medium.d
    if hi is None:
        hi = medium.d
    for name, pt in (("x", x), ("x_prime", x_prime)):
        if not lo <= pt <= hi:
            raise ValueError(f"{name}={pt!r} lies outside layer {layer}")
    k = spectral.kperp(layer)
    if k == 0:
        raise CutoffError(f"layer {layer} is at cutoff, free Green function diverges")
    v = medium.velocity(layer)
    return complex(np.exp(1j * k * abs(x - x_prime)) / (2j * v**2 * k))


@dataclass(frozen=True)
class CompositeAmplitudes:
    """Summed bounce series of the two interfaces.

    T_full transmits across the whole structure, T_prime and R_prime
    feed the right- and left-moving waves inside the spacer, R reflects
    back into the first layer, and D is the bounce-series denominator.
    """

    T_full: complex
    T_prime: complex
    R_prime: complex
    R: complex
    D: complex


def composite_amplitudes(medium: TrilayerMedium, spectral: SpectralPoint) -> CompositeAmplitudes:
    """Composite T-matrix elements of the two coupled interfaces.

    The geometric series over repeated spacer traversals is summed in
    closed form; its denominator D vanishing means the spectral point is
    a guided mode, reported as PoleError.
    """
    first = StepContext.at_first_interface(medium, spectral)
    second = StepContext.at_second_interface(medium, spectral)
    t0_gt = t_matrix(first, "reflect_gt")
    t0_lt = t_matrix(first, "reflect_lt")
    t0_cross = t_matrix(first, "cross")
    td_lt = t_matrix(second, "reflect_lt")
    td_cross = t_matrix(second, "cross")
    g = free_green(medium.d, 0.0, 2, medium, spectral)
    D = 1.0 - g * t0_gt * g * td_lt
    if D == 0:
        raise PoleError("bounce-series denominator vanishes: spectral point is a guided mode")
    T_prime = t0_cross / D
    R_prime = td_lt * g * T_prime
    T_full = td_cross * g * T_prime
    R = t0_lt + t0_cross * g * td_lt * g * t0_cross / D
    return CompositeAmplitudes(
        T_full=complex(T_full),
        T_prime=complex(T_prime),
        R_prime=complex(R_prime),
        R=complex(R),
        D=complex(D),
    )


def assembled_green(
    x: float, x_prime: float, medium: TrilayerMedium, spectral: SpectralPoint
) -> complex:
    """Trilayer Green function assembled from free parts and T-matrices.

    Supports the same region pairs as the closed forms: at least one of
    the two points must lie in the first layer.
    """
    obs = layer_of(x, medium)
    src = layer_of(x_prime, medium)
    if src != 1:
        if obs != 1:
            raise UnsupportedRegionError(
                f"no assembly for observation in layer {obs} with source in layer {src}; "
                "at least one point must lie in the first layer"
            )
        x, x_prime = x_prime, x
        obs, src = src, obs
    amps = composite_amplitudes(medium, spectral)

    def g0(a: float, b: float, layer: int) -> complex:
        return free_green(a, b, layer, medium, spectral)

    if obs == 1:
        return g0(x, x_prime, 1) + g0(x, 0.0, 1) * amps.R * g0(0.0, x_prime, 1)
    if obs == 2:
        outgoing = g0(x, 0.0, 2) * amps.T_prime
        returning = g0(x, medium.d, 2) * amps.R_prime
        return (outgoing + returning) * g0(0.0, x_prime, 1)
    return g0(x, medium.d, 3) * amps.T_full * g0(0.0, x_prime, 1)
