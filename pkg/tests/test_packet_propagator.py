import math

import numpy as np
import pytest

from layerwave import (
    AccuracyShortfallWarning,
    FieldGrid,
    GridResolutionWarning,
    IncidentPacket,
    TrilayerMedium,
    evaluate_field_grid,
    free_propagator_closed,
    packet_field_normal,
    packet_field_oblique,
    plane_wave_limit,
    propagator_g,
    wave_equation_residual,
)

UNIFORM = TrilayerMedium(v1=2.0, v2=2.0, v3=2.0, d=1.0)
TRILAYER = TrilayerMedium(v1=1.0, v2=2.0, v3=0.8, d=1.0)


@pytest.mark.parametrize(
    "x, x_prime, t, v, expected",
    [
        (0.0, 0.0, 1.0, 1.0, -0.5),          # on the source world line
        (0.3, -0.2, 1.0, 1.0, -0.5),         # inside the cone
        (2.0, 0.0, 1.0, 1.0, 0.0),           # outside the cone
        (1.0, 0.0, 1.0, 1.0, -0.25),         # on the front, half weight
        (0.3, -0.2, -1.0, 1.0, 0.5),         # advanced side flips sign
        (0.0, 0.0, 0.0, 1.0, 0.0),           # vanishes at equal times
        (0.0, 0.0, 1.0, 4.0, -0.125),        # amplitude scales as 1 / (2 v)
        (3.9, 0.0, 1.0, 4.0, -0.125),
    ],
)
def test_free_propagator_closed_table(x, x_prime, t, v, expected):
    assert free_propagator_closed(x, x_prime, t, v) == expected


def test_free_propagator_rejects_bad_speed():
    with pytest.raises(ValueError):
        free_propagator_closed(0.0, 0.0, 1.0, 0.0)
    with pytest.raises(ValueError):
        free_propagator_closed(0.0, 0.0, 1.0, -2.0)


@pytest.mark.parametrize("tau", [1.0, 0.3, -1.0])
def test_propagator_matches_closed_form_in_uniform_medium(tau):
    x, x_prime = 0.7, -0.4
    value = propagator_g(x, x_prime, tau, UNIFORM)
    closed = free_propagator_closed(x, x_prime, tau, UNIFORM.v2)
    np.testing.assert_allclose(value, closed, atol=1e-6)


def test_propagator_is_antisymmetric_in_time():
    forward = propagator_g(-0.5, -1.5, 1.5, TRILAYER)
    backward = propagator_g(-0.5, -1.5, -1.5, TRILAYER)
    np.testing.assert_allclose(forward, -backward, atol=1e-12)


def test_propagator_silent_before_first_arrival():
    # Both points sit in the slow first layer one spacer width apart, so
    # nothing can arrive before the direct travel time.
    early = propagator_g(-0.5, -1.5, 0.25, TRILAYER)
    assert abs(early) <= 1e-6


def test_propagator_direct_plateau_between_fronts():
    # After the direct front and before the interface echo the value is
    # the free plateau of the first layer.
    value = propagator_g(-0.5, -1.5, 1.5, TRILAYER)
    np.testing.assert_allclose(value, -0.5 / TRILAYER.v1, atol=1e-5)


def test_propagator_argument_validation():
    with pytest.raises(ValueError):
        propagator_g(0.5, -0.5, 1.0, TRILAYER, taper_width=0.0)


def test_propagator_warns_on_unreachable_tolerance():
    with pytest.warns(AccuracyShortfallWarning):
        propagator_g(0.5, -0.5, 1.0, TRILAYER, tol=1e-30)


def test_plane_wave_limit_in_uniform_medium():
    uniform = TrilayerMedium(v1=1.0, v2=1.0, v3=1.0, d=1.0)
    w = math.pi
    for x_tilde in (-2.3, -0.7):
        for t_tilde in (0.0, 0.4, 1.7):
            sample = plane_wave_limit(x_tilde, t_tilde, uniform, w)
            np.testing.assert_allclose(
                sample.f_plus, 0.5 * math.cos(w * (x_tilde - t_tilde)), atol=1e-14
            )
            np.testing.assert_allclose(
                sample.f_minus, 0.5 * math.cos(w * (x_tilde + t_tilde)), atol=1e-14
            )


def test_plane_wave_limit_weighted_continuity():
    # The pattern jumps at the interfaces exactly so that v(x) times the
    # field stays continuous.
    w = 2.4
    eps = 1e-9
    t = 0.3
    v1, v2, v3 = 0.5, 1.0, 0.4  # spacer-unit speeds of TRILAYER
    left = plane_wave_limit(-eps, t, TRILAYER, w)
    at0 = plane_wave_limit(0.0, t, TRILAYER, w)
    np.testing.assert_allclose(v1 * left.f_plus, v2 * at0.f_plus, rtol=1e-6, atol=1e-12)
    at1 = plane_wave_limit(1.0, t, TRILAYER, w)
    right = plane_wave_limit(1.0 + eps, t, TRILAYER, w)
    np.testing.assert_allclose(v3 * right.f_plus, v2 * at1.f_plus, rtol=1e-6, atol=1e-12)


def test_plane_wave_limit_rejects_bad_carrier():
    with pytest.raises(ValueError):
        plane_wave_limit(-1.0, 0.0, TRILAYER, 0.0)


def test_wide_packet_approaches_plane_wave_any_launch_point():
    omega0 = 2 * math.pi  # carrier pi in spacer units
    x_tilde, t_tilde = -2.0, 1.3
    limit = plane_wave_limit(x_tilde, t_tilde, TRILAYER, math.pi)
    samples = []
    for x_i in (-2.0, -4.0):
        packet = IncidentPacket.normal_incidence(
            TRILAYER, omega0=omega0, x_i=x_i, sigma_x=40.0
        )
        samples.append(packet_field_normal(x_tilde, t_tilde, TRILAYER, packet))
    for sample in samples:
        np.testing.assert_allclose(sample.f_plus, limit.f_plus, atol=5e-3)
        np.testing.assert_allclose(sample.f_minus, limit.f_minus, atol=5e-3)
    np.testing.assert_allclose(samples[0].f_plus, samples[1].f_plus, atol=5e-3)


def test_normal_sampler_rejects_oblique_packet():
    packet = IncidentPacket.oblique(
        TRILAYER, omega0=5.0, k0_par=3.0, x_i=-2.0, sigma_x=0.5
    )
    with pytest.raises(ValueError):
        packet_field_normal(-1.0, 0.0, TRILAYER, packet)


def test_oblique_sampler_reduces_to_normal_at_zero_parallel():
    medium = TrilayerMedium(v1=1.0, v2=2.0, v3=0.8, d=2.0)
    packet = IncidentPacket.normal_incidence(
        medium, omega0=math.pi, x_i=-4.0, sigma_x=1.0
    )
    via_oblique = packet_field_oblique(-2.0, 0.0, 3.0, medium, packet)
    via_normal = packet_field_normal(-1.0, 3.0, medium, packet)
    assert via_oblique.x_tilde == via_normal.x_tilde
    assert via_oblique.t_tilde == via_normal.t_tilde
    np.testing.assert_allclose(via_oblique.f_plus, via_normal.f_plus, atol=1e-8)
    np.testing.assert_allclose(via_oblique.f_minus, via_normal.f_minus, atol=1e-8)


def transmitted_patch_grid():
    # A small patch in the third layer after the packet has crossed the
    # spacer, resolved well below the carrier period.
    packet = IncidentPacket.normal_incidence(
        TRILAYER, omega0=2 * math.pi, x_i=-2.0, sigma_x=0.5
    )
    h = 1.0 / (16.0 * math.pi)
    xs = 1.2 + h * np.arange(9)
    ts = 6.3 + h * np.arange(9)
    return evaluate_field_grid(TRILAYER, packet, xs, ts)


def test_residual_small_away_from_interfaces():
    grid = transmitted_patch_grid()
    res = wave_equation_residual(grid, TRILAYER)
    interior = res[2:-2, 2:-2]
    assert np.all(np.isfinite(interior))
    assert np.nanmax(np.abs(interior)) < 1e-3
    assert np.all(np.isnan(res[:2, :]))
    assert np.all(np.isnan(res[-2:, :]))
    assert np.all(np.isnan(res[:, :2]))
    assert np.all(np.isnan(res[:, -2:]))


def test_residual_blanks_interface_straddling_columns():
    packet = IncidentPacket.normal_incidence(
        TRILAYER, omega0=2 * math.pi, x_i=-2.0, sigma_x=0.5
    )
    xs = -0.06 + 0.03 * np.arange(6)
    ts = 4.0 + 0.03 * np.arange(5)
    grid = evaluate_field_grid(TRILAYER, packet, xs, ts)
    res = wave_equation_residual(grid, TRILAYER)
    assert np.all(np.isnan(res))


def test_residual_warns_on_coarse_grid():
    packet = IncidentPacket.normal_incidence(
        TRILAYER, omega0=2 * math.pi, x_i=-2.0, sigma_x=0.5
    )
    xs = 1.2 + 0.1 * np.arange(5)
    ts = 6.0 + 0.1 * np.arange(5)
    grid = evaluate_field_grid(TRILAYER, packet, xs, ts)
    with pytest.warns(GridResolutionWarning):
        wave_equation_residual(grid, TRILAYER)


def test_residual_input_validation():
    packet = IncidentPacket.normal_incidence(
        TRILAYER, omega0=2 * math.pi, x_i=-2.0, sigma_x=0.5
    )
    ts = 6.0 + 0.02 * np.arange(5)
    ragged = evaluate_field_grid(
        TRILAYER, packet, np.array([1.2, 1.25, 1.32, 1.36, 1.42]), ts
    )
    with pytest.raises(ValueError):
        wave_equation_residual(ragged, TRILAYER)
    short = evaluate_field_grid(TRILAYER, packet, 1.2 + 0.02 * np.arange(4), ts)
    with pytest.raises(ValueError):
        wave_equation_residual(short, TRILAYER)


def test_residual_requires_engine_metadata():
    n = 5
    bare = FieldGrid(
        x_tilde=1.2 + 0.02 * np.arange(n),
        t_tilde=6.0 + 0.02 * np.arange(n),
        f_plus=np.zeros((n, n)),
        f_minus=np.zeros((n, n)),
        error_estimate=np.zeros((n, n)),
        converged=True,
        metadata={},
    )
    with pytest.raises(ValueError):
        wave_equation_residual(bare, TRILAYER)
