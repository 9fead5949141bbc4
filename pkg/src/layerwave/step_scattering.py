"""Scattering off a single velocity step.

Conventions: at an interface the side with the larger coordinate is
labelled `gt` and the side with the smaller coordinate `lt`.  All wave
vectors here are perpendicular components on the Im >= 0 branch.  For a
wave hitting the step, the reflection amplitudes from the two sides and
the transmission amplitude are

    r_gt = (k_gt - k_lt) / (k_gt + k_lt),   r_lt = -r_gt,
    t    = 2 sqrt(k_gt) sqrt(k_lt) / (k_gt + k_lt),

which conserve flux, r**2 + t**2 = 1, whenever both wave vectors are real.
The step can equivalently be described by effective delta potentials
placed on the interface; summing the Born series of that potential with
the half-space Green functions reproduces the same amplitudes, and
`t_matrix` / `t_matrix_series` expose both routes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

from .errors import CutoffError, DegenerateSpectralPointError, PoleError
from .media import SpectralPoint, TrilayerMedium, principal_sqrt

__all__ = [
    "Channel",
    "StepContext",
    "EffectivePotentials",
    "step_amplitudes",
    "fresnel_amplitudes",
    "effective_potentials",
    "interface_green",
    "t_matrix",
    "t_matrix_series",
]

Channel = Literal["reflect_gt", "reflect_lt", "cross"]

_CHANNELS = ("reflect_gt", "reflect_lt", "cross")


@dataclass(frozen=True)
class StepContext:
    """Perpendicular wave vectors and velocities on the two sides of a step."""

    k_gt: complex
    k_lt: complex
    v_gt: float
    v_lt: float

    def __post_init__(self) -> None:
        if not (self.v_gt > 0 and self.v_lt > 0):
            raise ValueError("velocities must be positive")
        for name in ("k_gt", "k_lt"):
            k = complex(getattr(self, name))
            if not (math.isfinite(k.real) and math.isfinite(k.imag)):
                raise ValueError(f"{name} must be finite")
            if k.imag < 0.0:
                raise ValueError(f"{name} must lie on the Im >= 0 branch, got {k!r}")

    @classmethod
    def at_first_interface(cls, medium: TrilayerMedium, spectral: SpectralPoint) -> "StepContext":
        """The step at x = 0: spacer on the gt side, first layer on the lt side."""
        return cls(k_gt=spectral.kperp2, k_lt=spectral.kperp1, v_gt=medium.v2, v_lt=medium.v1)

    @classmethod
    def at_second_interface(cls, medium: TrilayerMedium, spectral: SpectralPoint) -> "StepContext":
        """The step at x = d: third layer on the gt side, spacer on the lt side."""
        return cls(k_gt=spectral.kperp3, k_lt=spectral.kperp2, v_gt=medium.v3, v_lt=medium.v2)


@dataclass(frozen=True)
class EffectivePotentials:
    """Strengths of the interface delta potentials, one per scattering channel."""

    h_gt: complex
    h_lt: complex
    h_cross: complex


def step_amplitudes(ctx: StepContext) -> tuple[complex, complex, complex]:
    """Reflection (both sides) and transmission amplitudes of a velocity step.

    Returns (r_gt, r_lt, t).  Raises DegenerateSpectralPointError when the
    two perpendicular wave vectors sum to zero, which only happens when
    both vanish.
    """
    ksum = ctx.k_gt + ctx.k_lt
    if ksum == 0:
        raise DegenerateSpectralPointError("k_gt + k_lt vanishes at this spectral point")
    r_gt = (ctx.k_gt - ctx.k_lt) / ksum
    t = 2.0 * principal_sqrt(ctx.k_gt) * principal_sqrt(ctx.k_lt) / ksum
    return r_gt, -r_gt, t


def fresnel_amplitudes(n_ratio: float, cos_gt: float, cos_lt: float) -> tuple[float, float]:
    """Step amplitudes in refraction form, for perpendicular polarization.

    n_ratio is the refractive-index ratio k_gt / k_lt of the full wave
    vectors and cos_gt, cos_lt are the propagation-angle cosines on the
    two sides (cos = k_perp / k).  Returns (r_gt, t).  Only propagating
    geometries are meaningful here, so the cosines must lie in (0, 1].
    """
    if n_ratio <= 0:
        raise ValueError("n_ratio must be positive")
    for name, c in (("cos_gt", cos_gt), ("cos_lt", cos_lt)):
        if not 0.0 < c <= 1.0:
            raise ValueError(f"{name} must lie in (0, 1], got {c!r}")
    den = n_ratio * cos_gt + cos_lt
    r_gt = (n_ratio * cos_gt - cos_lt) / den
    t = 2.0 * math.sqrt(n_ratio * cos_gt * cos_lt) / den
    return r_gt, t


def effective_potentials(ctx: StepContext) -> EffectivePotentials:
    """Interface delta-potential strengths equivalent to the velocity step.

    h_gt and h_lt drive same-side reflection, h_cross drives transmission:

        h_gt    = i v_gt**2 (k_gt - k_lt)
        h_lt    = i v_lt**2 (k_lt - k_gt)
        h_cross = 4 i v_gt v_lt k_gt k_lt / (sqrt(k_gt) + sqrt(k_lt))**2
    """
    root_sum = principal_sqrt(ctx.k_gt) + principal_sqrt(ctx.k_lt)
    if root_sum == 0:
        raise DegenerateSpectralPointError("both wave vectors vanish at this spectral point")
    h_gt = 1j * ctx.v_gt**2 * (ctx.k_gt - ctx.k_lt)
    h_lt = 1j * ctx.v_lt**2 * (ctx.k_lt - ctx.k_gt)
    h_cross = 4j * ctx.v_gt * ctx.v_lt * ctx.k_gt * ctx.k_lt / (root_sum * root_sum)
    return EffectivePotentials(h_gt=h_gt, h_lt=h_lt, h_cross=h_cross)


def interface_green(ctx: StepContext, channel: Channel) -> complex:
    """Free Green function evaluated on the interface for one channel.

    Same-side channels give 1 / (2i v**2 k_perp) with that side's values;
    the cross channel mixes the two sides through the geometric mean of
    the wave vectors, 1 / (2i v_gt v_lt sqrt(k_gt) sqrt(k_lt)).
    """
    if channel == "reflect_gt":
        if ctx.k_gt == 0:
            raise CutoffError("k_gt vanishes: gt channel is at cutoff")
        return 1.0 / (2j * ctx.v_gt**2 * ctx.k_gt)
    if channel == "reflect_lt":
        if ctx.k_lt == 0:
            raise CutoffError("k_lt vanishes: lt channel is at cutoff")
        return 1.0 / (2j * ctx.v_lt**2 * ctx.k_lt)
    if channel == "cross":
        root = principal_sqrt(ctx.k_gt) * principal_sqrt(ctx.k_lt)
        if root == 0:
            raise CutoffError("a channel is at cutoff, cross Green function undefined")
        return 1.0 / (2j * ctx.v_gt * ctx.v_lt * root)
    raise ValueError(f"channel must be one of {_CHANNELS}, got {channel!r}")


def t_matrix(ctx: StepContext, channel: Channel) -> complex:
    """Closed-form step T-matrix for one channel.

    Equals 2i v**2 k_perp r for the same-side channels and
    2i v_gt v_lt sqrt(k_gt k_lt) t for the cross channel, with r and t the
    step amplitudes.  This is the geometric sum of `t_matrix_series`.
    """
    ksum = ctx.k_gt + ctx.k_lt
    if ksum == 0:
        raise PoleError("T-matrix denominator 1 - G0*H1 vanishes (k_gt + k_lt = 0)")
    if channel == "reflect_gt":
        return 2j * ctx.v_gt**2 * ctx.k_gt * (ctx.k_gt - ctx.k_lt) / ksum
    if channel == "reflect_lt":
        return 2j * ctx.v_lt**2 * ctx.k_lt * (ctx.k_lt - ctx.k_gt) / ksum
    if channel == "cross":
        root = principal_sqrt(ctx.k_gt) * principal_sqrt(ctx.k_lt)
        return 2j * ctx.v_gt * ctx.v_lt * root * (2.0 * root / ksum)
    raise ValueError(f"channel must be one of {_CHANNELS}, got {channel!r}")


def t_matrix_series(ctx: StepContext, channel: Channel, n_terms: int) -> complex:
    """Partial Born series H1 * sum_m (G0 H1)**m with n_terms terms.

    Converges geometrically to `t_matrix` with ratio |G0 H1|; the exact
    remainder after n terms is T * (G0 H1)**n.
    """
    if n_terms < 1:
        raise ValueError("n_terms must be at least 1")
    if channel not in _CHANNELS:
        raise ValueError(f"channel must be one of {_CHANNELS}, got {channel!r}")
    pots = effective_potentials(ctx)
    h = {"reflect_gt": pots.h_gt, "reflect_lt": pots.h_lt, "cross": pots.h_cross}[channel]
    g = interface_green(ctx, channel)
    q = g * h
    total = 0.0 + 0.0j
    power = 1.0 + 0.0j
    for _ in range(n_terms):
        total += power
        power *= q
    return h * total
