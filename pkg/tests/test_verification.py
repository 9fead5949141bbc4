import numpy as np
import pytest

from layerwave import mst_assembly, packet_propagator, trilayer_green, verification

EXPECTED_ORDER = [
    "unitarity",
    "interface_matching",
    "dual_path",
    "series_convergence",
    "free_propagator",
    "homogeneous_packet",
    "plane_wave_limit",
]


@pytest.mark.parametrize(
    "check, kwargs",
    [
        (verification.check_unitarity, dict(samples=200)),
        (verification.check_interface_matching, dict(samples=120)),
        (verification.check_dual_path, dict(samples=120)),
        (verification.check_series_convergence, dict(samples=30)),
        (verification.check_free_propagator, {}),
        (verification.check_homogeneous_packet, {}),
        (verification.check_plane_wave_limit, {}),
    ],
)
def test_individual_checks_pass(check, kwargs):
    report = check(**kwargs)
    assert report["passed"], report


def test_run_all_report_structure():
    report = verification.run_all()
    assert report["passed"] is True
    assert report["seed"] == 20240815
    assert [c["name"] for c in report["checks"]] == EXPECTED_ORDER
    for check in report["checks"]:
        assert isinstance(check["passed"], bool)
        assert check["tolerance"] > 0
        assert check["samples"] > 0


def test_unitarity_check_catches_lossy_probabilities(monkeypatch):
    monkeypatch.setattr(trilayer_green, "probabilities", lambda medium, spectral: (0.5, 0.4))
    report = verification.check_unitarity(samples=5)
    assert not report["passed"]
    assert report["max_abs_defect"] >= 0.1 - 1e-15


def test_dual_path_check_catches_broken_assembly(monkeypatch):
    original = mst_assembly.assembled_green

    def flipped(x, x_prime, medium, spectral):
        return -original(x, x_prime, medium, spectral)

    monkeypatch.setattr(mst_assembly, "assembled_green", flipped)
    report = verification.check_dual_path(samples=5)
    assert not report["passed"]


def test_free_propagator_check_catches_offset(monkeypatch):
    original = packet_propagator.free_propagator_closed

    def shifted(x, x_prime, t, v):
        return original(x, x_prime, t, v) + 0.01

    monkeypatch.setattr(packet_propagator, "free_propagator_closed", shifted)
    report = verification.check_free_propagator()
    assert not report["passed"]
    assert report["max_abs_defect"] >= 0.01 - 1e-12


def test_checks_are_deterministic():
    first = verification.check_unitarity(seed=7, samples=50)
    second = verification.check_unitarity(seed=7, samples=50)
    assert first == second
    shuffled = verification.check_unitarity(seed=8, samples=50)
    assert shuffled["passed"]
    assert not np.isnan(shuffled["max_abs_defect"])
