"""Trilayer geometry, dispersion, and dimensionless scaling.

The medium is a piecewise-constant phase-velocity profile along x:
v1 for x < 0, v2 inside the spacer 0 < x < d, and v3 for x > d.  Lateral
translation invariance lets every monochromatic solution be labelled by a
frequency omega and a conserved lateral wave number k_par; the dynamics
along x then involve only the perpendicular wave vectors

    k_perp_i = sqrt(omega**2 / v_i**2 - k_par**2),  i = 1, 2, 3,

taken on the branch with nonnegative imaginary part so that evanescent
waves decay away from their source.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "TrilayerMedium",
    "SpectralPoint",
    "ScaleSystem",
    "layer_of",
    "perp_wavevector",
    "perp_wavevector_array",
    "principal_sqrt",
    "dimensionless_medium",
]


@dataclass(frozen=True)
class TrilayerMedium:
    """Three-layer phase-velocity profile with a spacer of width d.

    All four parameters must be positive and finite.  Units are free as
    long as they are used consistently; `ScaleSystem` converts to the
    dimensionless system in which d = 1 and v2 = 1.
    """

    v1: float
    v2: float
    v3: float
    d: float

    def __post_init__(self) -> None:
        for name in ("v1", "v2", "v3", "d"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be a positive finite number, got {value!r}")

    def velocity(self, layer: int) -> float:
        """Phase velocity of layer 1, 2, or 3."""
        if layer == 1:
            return self.v1
        if layer == 2:
            return self.v2
        if layer == 3:
            return self.v3
        raise ValueError(f"layer must be 1, 2, or 3, got {layer!r}")

    def velocity_at(self, x: float) -> float:
        """Phase velocity at position x (interface points count as spacer)."""
        return self.velocity(layer_of(x, self))


def layer_of(x: float, medium: TrilayerMedium) -> int:
    """Layer index of position x.

    The interface points x = 0 and x = d are assigned to the spacer, so a
    position is never ambiguous.
    """
    if not math.isfinite(x):
        raise ValueError(f"position must be finite, got {x!r}")
    if x < 0.0:
        return 1
    if x <= medium.d:
        return 2
    return 3


def perp_wavevector(omega: float, k_par: float, v: float) -> complex:
    """Perpendicular wave vector sqrt(omega**2/v**2 - k_par**2).

    Branch convention: the result is real and nonnegative in the
    propagating regime omega >= v*k_par and lies on the positive imaginary
    axis in the evanescent regime, so the imaginary part is never negative.
    The radicand is formed as a product of sum and difference, which stays
    accurate close to the cutoff.
    """
    if omega < 0.0 or k_par < 0.0:
        raise ValueError("omega and k_par must be nonnegative")
    k = omega / v
    radicand = (k - k_par) * (k + k_par)
    if radicand >= 0.0:
        return complex(math.sqrt(radicand), 0.0)
    return complex(0.0, math.sqrt(-radicand))


def perp_wavevector_array(omega: np.ndarray, k_par: float, v: float) -> np.ndarray:
    """Vectorized `perp_wavevector` for an array of frequencies."""
    k = np.asarray(omega, dtype=float) / v
    radicand = (k - k_par) * (k + k_par)
    real = np.sqrt(np.maximum(radicand, 0.0))
    imag = np.sqrt(np.maximum(-radicand, 0.0))
    return real + 1j * imag


def principal_sqrt(z: complex) -> complex:
    """Principal square root with a nonnegative-imaginary-part result.

    Inputs always come from the perp_wavevector branch (first quadrant of
    the complex plane), where the principal root already has Im >= 0.  A
    negative-zero imaginary part would flip cmath.sqrt onto the wrong side
    of the cut, so it is normalized away first.  Square roots of products
    are always taken factor by factor with this function, never as a single
    root of the product.
    """
    if isinstance(z, np.ndarray):
        z = np.where(z.imag == 0.0, z.real + 0.0j, z)
        return np.sqrt(z)
    if z.imag == 0.0:
        z = complex(z.real, 0.0)
    return cmath.sqrt(z)


@dataclass(frozen=True)
class SpectralPoint:
    """A (omega, k_par) pair together with the three perpendicular wave vectors."""

    omega: float
    k_par: float
    kperp1: complex
    kperp2: complex
    kperp3: complex

    @classmethod
    def at(cls, medium: TrilayerMedium, omega: float, k_par: float = 0.0) -> "SpectralPoint":
        return cls(
            omega=omega,
            k_par=k_par,
            kperp1=perp_wavevector(omega, k_par, medium.v1),
            kperp2=perp_wavevector(omega, k_par, medium.v2),
            kperp3=perp_wavevector(omega, k_par, medium.v3),
        )

    def kperp(self, layer: int) -> complex:
        if layer == 1:
            return self.kperp1
        if layer == 2:
            return self.kperp2
        if layer == 3:
            return self.kperp3
        raise ValueError(f"layer must be 1, 2, or 3, got {layer!r}")

    @property
    def is_propagating(self) -> bool:
        """True when all three perpendicular wave vectors are real."""
        return self.kperp1.imag == 0.0 and self.kperp2.imag == 0.0 and self.kperp3.imag == 0.0


@dataclass(frozen=True)
class ScaleSystem:
    """Unit system with lengths in d, times in d/v2, frequencies in v2/d.

    Only the length and time units are stored; the frequency unit is
    exposed as the exact reciprocal of the stored time unit, and frequency
    conversions multiply by t_d directly.  The unit pair therefore cannot
    drift apart through independent rounding.
    """

    d: float
    t_d: float

    @classmethod
    def for_medium(cls, medium: TrilayerMedium) -> "ScaleSystem":
        return cls(d=medium.d, t_d=medium.d / medium.v2)

    @property
    def omega_d(self) -> float:
        return 1.0 / self.t_d

    def length_to(self, x: float) -> float:
        """Physical length to dimensionless."""
        return x / self.d

    def length_from(self, x_tilde: float) -> float:
        return x_tilde * self.d

    def time_to(self, t: float) -> float:
        return t / self.t_d

    def time_from(self, t_tilde: float) -> float:
        return t_tilde * self.t_d

    def frequency_to(self, omega: float) -> float:
        return omega * self.t_d

    def frequency_from(self, omega_tilde: float) -> float:
        return omega_tilde / self.t_d

    def wavenumber_to(self, k: float) -> float:
        return k * self.d

    def wavenumber_from(self, k_tilde: float) -> float:
        return k_tilde / self.d


def dimensionless_medium(medium: TrilayerMedium) -> TrilayerMedium:
    """The same velocity profile expressed in units with v2 = 1 and d = 1."""
    return TrilayerMedium(
        v1=medium.v1 / medium.v2,
        v2=1.0,
        v3=medium.v3 / medium.v2,
        d=1.0,
    )
