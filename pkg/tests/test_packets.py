import math

import numpy as np
import pytest

from layerwave import FieldSample, IncidentPacket, TrilayerMedium
from layerwave.packets import packet_to_dimensionless

MED = TrilayerMedium(v1=1.0, v2=2.0, v3=1.0, d=1.0)


def test_normal_incidence_dispersion():
    pkt = IncidentPacket.normal_incidence(MED, omega0=3.0, x_i=-2.0, sigma_x=0.5)
    assert pkt.k0_x == 3.0
    assert pkt.k0_par == 0.0
    pkt.validate_dispersion(MED)


def test_oblique_frozen_wavevector():
    # 3-4-5 split of the carrier wave vector
    pkt = IncidentPacket.oblique(MED, omega0=5.0, k0_par=3.0, x_i=-2.0, sigma_x=0.5)
    np.testing.assert_allclose(pkt.k0_x, 4.0, rtol=1e-15)
    pkt.validate_dispersion(MED)


def test_oblique_rejects_steep_carrier():
    with pytest.raises(ValueError):
        IncidentPacket.oblique(MED, omega0=2.0, k0_par=2.5, x_i=-2.0, sigma_x=0.5)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(x_i=0.5),
        dict(x_i=0.0),
        dict(sigma_x=0.0),
        dict(sigma_x=-1.0),
        dict(omega0=0.0),
        dict(k0_x=0.0),
        dict(k0_x=-2.0),
        dict(k0_par=-0.1),
        dict(amplitude=math.inf),
    ],
)
def test_packet_validation(kwargs):
    base = dict(x_i=-1.0, sigma_x=0.5, omega0=2.0, k0_x=2.0)
    base.update(kwargs)
    with pytest.raises(ValueError):
        IncidentPacket(**base)


def test_validate_dispersion_catches_mismatch():
    pkt = IncidentPacket(x_i=-1.0, sigma_x=0.5, omega0=2.0, k0_x=1.5)
    with pytest.raises(ValueError):
        pkt.validate_dispersion(MED)


def test_packet_to_dimensionless_scaling():
    med = TrilayerMedium(v1=2.0, v2=4.0, v3=2.0, d=2.0)
    pkt = IncidentPacket.normal_incidence(med, omega0=8.0, x_i=-4.0, sigma_x=2.0)
    scaled = packet_to_dimensionless(pkt, med)
    assert scaled.x_i == -2.0
    assert scaled.sigma_x == 1.0
    # frequencies scale by d / v2, wave numbers by d
    np.testing.assert_allclose(scaled.omega0, 4.0, rtol=1e-15)
    np.testing.assert_allclose(scaled.k0_x, 8.0, rtol=1e-15)
    assert scaled.amplitude == pkt.amplitude


def test_field_sample_sum():
    sample = FieldSample(x_tilde=0.1, t_tilde=0.2, f_plus=0.3, f_minus=-0.1)
    np.testing.assert_allclose(sample.f, 0.2, rtol=1e-15)
