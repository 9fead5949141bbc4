import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import mixed_cases, propagating_cases
from layerwave import (
    CutoffError,
    EvanescentRegimeError,
    SpectralPoint,
    TrilayerMedium,
    UnsupportedRegionError,
    amplitude_set,
    green_advanced,
    green_profile,
    green_retarded,
    probabilities,
)


def test_uniform_medium_amplitudes():
    """With no velocity contrast the spacer only adds propagation phase."""
    med = TrilayerMedium(v1=1.0, v2=1.0, v3=1.0, d=1.7)
    sp = SpectralPoint.at(med, 2.3, 0.0)
    amps = amplitude_set(med, sp)
    np.testing.assert_allclose(amps.t, cmath.exp(1j * 2.3 * 1.7), rtol=1e-14)
    np.testing.assert_allclose(amps.t_prime, 1.0, rtol=1e-14)
    assert abs(amps.r) < 1e-14
    assert abs(amps.r_prime) < 1e-14


def test_symmetric_resonance_full_transmission():
    # spacer phase k2 d = pi
    med = TrilayerMedium(v1=1.0, v2=2.0, v3=1.0, d=1.0)
    sp = SpectralPoint.at(med, 2.0 * math.pi, 0.0)
    t_prob, r_prob = probabilities(med, sp)
    np.testing.assert_allclose(t_prob, 1.0, atol=1e-10)
    np.testing.assert_allclose(r_prob, 0.0, atol=1e-10)


def test_asymmetric_resonance_partial_transmission():
    # perpendicular wave vectors (1, 1, 2) with sin(k2 d) = 0: the outer
    # mismatch alone caps |t|**2 at 8/9.
    med = TrilayerMedium(v1=1.0, v2=1.0, v3=0.5, d=math.pi)
    sp = SpectralPoint.at(med, 1.0, 0.0)
    assert sp.kperp1 == 1.0 and sp.kperp2 == 1.0 and sp.kperp3 == 2.0
    t_prob, r_prob = probabilities(med, sp)
    np.testing.assert_allclose(t_prob, 8.0 / 9.0, atol=1e-12)
    np.testing.assert_allclose(r_prob, 1.0 / 9.0, atol=1e-12)


def test_probabilities_frozen_off_resonance():
    # k_perp = (1, 2, 1), k2 d = pi/2: t = 16/25, r = 9/25
    med = TrilayerMedium(v1=2.0, v2=1.0, v3=2.0, d=math.pi / 4.0)
    sp = SpectralPoint.at(med, 2.0, 0.0)
    t_prob, r_prob = probabilities(med, sp)
    np.testing.assert_allclose(t_prob, 16.0 / 25.0, rtol=1e-14)
    np.testing.assert_allclose(r_prob, 9.0 / 25.0, rtol=1e-14)


@given(propagating_cases())
def test_unitarity(case):
    medium, sp = case
    t_prob, r_prob = probabilities(medium, sp)
    np.testing.assert_allclose(t_prob + r_prob, 1.0, atol=1e-12)
    assert t_prob >= 0.0
    assert r_prob >= 0.0


@given(propagating_cases())
def test_amplitude_probabilities_agree(case):
    """|t|**2 and |r|**2 of the amplitudes equal the closed probabilities."""
    medium, sp = case
    amps = amplitude_set(medium, sp)
    t_prob, r_prob = probabilities(medium, sp)
    np.testing.assert_allclose(abs(amps.t) ** 2, t_prob, rtol=1e-10, atol=1e-12)
    np.testing.assert_allclose(abs(amps.r) ** 2, r_prob, rtol=1e-10, atol=1e-12)


def test_probabilities_evanescent_raises():
    med = TrilayerMedium(v1=1.0, v2=3.0, v3=1.0, d=1.0)
    sp = SpectralPoint.at(med, 1.0, 0.5)
    assert sp.kperp2.imag > 0
    with pytest.raises(EvanescentRegimeError):
        probabilities(med, sp)


def test_probabilities_cutoff_raises():
    med = TrilayerMedium(v1=1.0, v2=2.0, v3=1.0, d=1.0)
    sp = SpectralPoint.at(med, 1.0, 0.5)
    assert sp.kperp2 == 0.0
    with pytest.raises(CutoffError):
        probabilities(med, sp)


@given(mixed_cases())
def test_green_symmetric_in_arguments(case):
    medium, sp = case
    pairs = [(-0.4, -1.1), (0.3 * medium.d, -0.8), (medium.d + 0.6, -0.2)]
    for x, x_prime in pairs:
        g_fwd = green_retarded(x, x_prime, medium, sp)
        g_rev = green_retarded(x_prime, x, medium, sp)
        np.testing.assert_allclose(g_fwd, g_rev, rtol=1e-12, atol=1e-300)


@given(mixed_cases())
def test_green_advanced_is_conjugate(case):
    medium, sp = case
    g_plus = green_retarded(-0.3, -0.9, medium, sp)
    g_minus = green_advanced(-0.3, -0.9, medium, sp)
    np.testing.assert_allclose(g_minus, np.conj(g_plus), rtol=1e-14)


def test_green_weighted_interface_continuity():
    """v(x) G(x, x') is continuous across both interfaces."""
    med = TrilayerMedium(v1=1.0, v2=2.5, v3=0.7, d=1.3)
    sp = SpectralPoint.at(med, 4.1, 0.6)
    x_src = -0.9
    eps = 1e-9
    left = med.v1 * green_retarded(-eps, x_src, med, sp)
    right = med.v2 * green_retarded(0.0, x_src, med, sp)
    np.testing.assert_allclose(left, right, rtol=1e-6)
    below = med.v2 * green_retarded(med.d, x_src, med, sp)
    above = med.v3 * green_retarded(med.d + eps, x_src, med, sp)
    np.testing.assert_allclose(below, above, rtol=1e-6)


def test_green_unsupported_regions():
    med = TrilayerMedium(v1=1.0, v2=2.0, v3=1.0, d=1.0)
    sp = SpectralPoint.at(med, 3.0, 0.0)
    for x, x_prime in ((0.5, 0.6), (1.5, 0.5), (0.5, 1.5), (1.5, 2.5)):
        with pytest.raises(UnsupportedRegionError):
            green_retarded(x, x_prime, med, sp)


def test_green_profile_matches_scalar_calls():
    med = TrilayerMedium(v1=1.0, v2=1.7, v3=0.8, d=1.2)
    omegas = np.linspace(0.5, 9.0, 40)
    for x in (-0.7, 0.4, 2.0):
        profile = green_profile(x, -1.5, med, omegas, k_par=0.3)
        want = np.array(
            [
                green_retarded(x, -1.5, med, SpectralPoint.at(med, float(w), 0.3))
                for w in omegas
            ]
        )
        np.testing.assert_allclose(profile, want, rtol=1e-12)


def test_green_profile_component_split():
    med = TrilayerMedium(v1=1.0, v2=2.0, v3=0.9, d=1.0)
    omegas = np.linspace(1.0, 6.0, 17)
    full = green_profile(-0.4, -1.3, med, omegas)
    direct = green_profile(-0.4, -1.3, med, omegas, component="direct")
    reflected = green_profile(-0.4, -1.3, med, omegas, component="reflected")
    np.testing.assert_allclose(direct + reflected, full, rtol=1e-13)


def test_green_profile_component_outside_first_layer():
    med = TrilayerMedium(v1=1.0, v2=2.0, v3=0.9, d=1.0)
    omegas = np.linspace(1.0, 6.0, 5)
    with pytest.raises(ValueError):
        green_profile(0.5, -1.3, med, omegas, component="direct")
    with pytest.raises(ValueError):
        green_profile(-0.5, -1.3, med, omegas, component="sideways")


def test_evanescent_green_decays():
    """Below the spacer light line transmission tunnels, decaying with width."""
    sp_args = dict(omega=1.0, k_par=0.8)
    thin = TrilayerMedium(v1=1.0, v2=4.0, v3=1.0, d=0.5)
    thick = TrilayerMedium(v1=1.0, v2=4.0, v3=1.0, d=2.5)
    sp_thin = SpectralPoint.at(thin, **sp_args)
    sp_thick = SpectralPoint.at(thick, **sp_args)
    assert sp_thin.kperp2.imag > 0
    g_thin = green_retarded(thin.d + 0.1, -0.1, thin, sp_thin)
    g_thick = green_retarded(thick.d + 0.1, -0.1, thick, sp_thick)
    ratio = abs(g_thick) / abs(g_thin)
    tunneling = math.exp(-sp_thin.kperp2.imag * (thick.d - thin.d))
    assert ratio < 2.0 * tunneling
    assert ratio < 0.5


@given(st.floats(min_value=0.2, max_value=5.0), st.floats(min_value=0.1, max_value=3.0))
def test_first_layer_green_solves_point_source(omega, v1):
    """Jump condition: dG/dx jumps by 1/v**2 across the source."""
    med = TrilayerMedium(v1=v1, v2=1.0, v3=1.0, d=1.0)
    sp = SpectralPoint.at(med, omega, 0.0)
    x_src = -2.0
    h = 1e-5
    left = green_retarded(x_src - h, x_src, med, sp)
    right = green_retarded(x_src + h, x_src, med, sp)
    center = green_retarded(x_src, x_src, med, sp)
    jump = ((right - center) - (center - left)) / h
    np.testing.assert_allclose(jump, 1.0 / v1**2, rtol=1e-3)
