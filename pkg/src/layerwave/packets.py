"""Incident Gaussian wave packets and sampled field values."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .media import ScaleSystem, TrilayerMedium

__all__ = ["IncidentPacket", "FieldSample", "packet_to_dimensionless"]


@dataclass(frozen=True)
class IncidentPacket:
    """A Gaussian packet launched in the first layer toward the stack.

    The packet starts centered at x_i < 0 with spatial width sigma_x and
    carrier wave vector (k0_x, k0_par), k0_x > 0 so it moves toward the
    interfaces.  omega0 is the carrier frequency; constructing through
    the factories guarantees it satisfies the first layer's dispersion
    relation, and `validate_dispersion` checks it for packets built by
    hand.  All quantities are in physical units unless the medium itself
    is dimensionless.
    """

    x_i: float
    sigma_x: float
    omega0: float
    k0_x: float
    k0_par: float = 0.0
    amplitude: float = 1.0

    def __post_init__(self) -> None:
        values = {
            "x_i": self.x_i,
            "sigma_x": self.sigma_x,
            "omega0": self.omega0,
            "k0_x": self.k0_x,
            "k0_par": self.k0_par,
            "amplitude": self.amplitude,
        }
        for name, value in values.items():
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
        if self.x_i >= 0:
            raise ValueError("x_i must be negative: the packet starts in the first layer")
        if self.sigma_x <= 0:
            raise ValueError("sigma_x must be positive")
        if self.omega0 <= 0:
            raise ValueError("omega0 must be positive")
        if self.k0_x <= 0:
            raise ValueError("k0_x must be positive so the packet moves toward the stack")
        if self.k0_par < 0:
            raise ValueError("k0_par must be non-negative")

    @classmethod
    def normal_incidence(
        cls,
        medium: TrilayerMedium,
        omega0: float,
        x_i: float,
        sigma_x: float,
        amplitude: float = 1.0,
    ) -> "IncidentPacket":
        return cls(
            x_i=x_i,
            sigma_x=sigma_x,
            omega0=omega0,
            k0_x=omega0 / medium.v1,
            k0_par=0.0,
            amplitude=amplitude,
        )

    @classmethod
    def oblique(
        cls,
        medium: TrilayerMedium,
        omega0: float,
        k0_par: float,
        x_i: float,
        sigma_x: float,
        amplitude: float = 1.0,
    ) -> "IncidentPacket":
        k1 = omega0 / medium.v1
        if not 0.0 <= k0_par < k1:
            raise ValueError(
                f"k0_par={k0_par!r} must satisfy 0 <= k0_par < omega0 / v1 = {k1!r} "
                "for a carrier that propagates toward the stack"
            )
        k0_x = math.sqrt((k1 - k0_par) * (k1 + k0_par))
        return cls(
            x_i=x_i,
            sigma_x=sigma_x,
            omega0=omega0,
            k0_x=k0_x,
            k0_par=k0_par,
            amplitude=amplitude,
        )

    def validate_dispersion(self, medium: TrilayerMedium, rel_tol: float = 1e-9) -> None:
        """Check omega0 = v1 |k0| within rel_tol; raise ValueError if not."""
        expected = medium.v1 * math.hypot(self.k0_x, self.k0_par)
        if abs(self.omega0 - expected) > rel_tol * self.omega0:
            raise ValueError(
                f"packet carrier violates the first-layer dispersion relation: "
                f"omega0={self.omega0!r} but v1 |k0| = {expected!r}"
            )


@dataclass(frozen=True)
class FieldSample:
    """Forward and backward field components at one space-time point."""

    x_tilde: float
    t_tilde: float
    f_plus: float
    f_minus: float

    @property
    def f(self) -> float:
        return self.f_plus + self.f_minus


def packet_to_dimensionless(packet: IncidentPacket, medium: TrilayerMedium) -> IncidentPacket:
    """Rescale a packet to spacer units (lengths over d, times over d / v2)."""
    scales = ScaleSystem.for_medium(medium)
    return replace(
        packet,
        x_i=scales.length_to(packet.x_i),
        sigma_x=scales.length_to(packet.sigma_x),
        omega0=scales.frequency_to(packet.omega0),
        k0_x=scales.wavenumber_to(packet.k0_x),
        k0_par=scales.wavenumber_to(packet.k0_par),
    )
