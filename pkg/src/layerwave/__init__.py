"""Exact wave propagation through a planar three-layer medium.

The package builds the frequency-domain Green function of a trilayer
two independent ways (closed form and multiple-scattering assembly),
turns it into a space-time propagator by frequency quadrature, and
evolves Gaussian packets through the structure.  Everything is exact
up to quadrature error; there is no spatial discretization of the
wave equation.
"""

from .errors import (
    AccuracyShortfallWarning,
    ConfigError,
    CutoffError,
    DegenerateSpectralPointError,
    EvanescentRegimeError,
    GridResolutionWarning,
    LayerwaveError,
    NonFiniteIntegrandError,
    PoleError,
    UnsupportedRegionError,
)
from .fieldgrid import FieldGrid, QuadratureSettings, evaluate_field_grid
from .media import ScaleSystem, SpectralPoint, TrilayerMedium, layer_of, perp_wavevector
from .mst_assembly import assembled_green, composite_amplitudes, free_green
from .packets import FieldSample, IncidentPacket
from .packet_propagator import (
    free_propagator_closed,
    packet_field_normal,
    packet_field_oblique,
    plane_wave_limit,
    propagator_g,
    wave_equation_residual,
)
from .step_scattering import (
    effective_potentials,
    fresnel_amplitudes,
    interface_green,
    step_amplitudes,
    t_matrix,
    t_matrix_series,
)
from .trilayer_green import (
    AmplitudeSet,
    amplitude_set,
    green_advanced,
    green_profile,
    green_retarded,
    probabilities,
)
from .verification import run_all as run_verification

__version__ = "0.1.0"

__all__ = [
    "AccuracyShortfallWarning",
    "ConfigError",
    "CutoffError",
    "DegenerateSpectralPointError",
    "EvanescentRegimeError",
    "FieldGrid",
    "FieldSample",
    "GridResolutionWarning",
    "IncidentPacket",
    "LayerwaveError",
    "NonFiniteIntegrandError",
    "PoleError",
    "QuadratureSettings",
    "ScaleSystem",
    "SpectralPoint",
    "TrilayerMedium",
    "UnsupportedRegionError",
    "AmplitudeSet",
    "amplitude_set",
    "assembled_green",
    "composite_amplitudes",
    "effective_potentials",
    "evaluate_field_grid",
    "free_green",
    "free_propagator_closed",
    "fresnel_amplitudes",
    "green_advanced",
    "green_profile",
    "green_retarded",
    "interface_green",
    "layer_of",
    "packet_field_normal",
    "packet_field_oblique",
    "perp_wavevector",
    "plane_wave_limit",
    "probabilities",
    "propagator_g",
    "run_verification",
    "step_amplitudes",
    "t_matrix",
    "t_matrix_series",
    "trilayer_amplitudes",
    "wave_equation_residual",
]
