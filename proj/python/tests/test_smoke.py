# SPDX-License-Identifier: Apache-2.0
# Copyright 2026 The ucalos Authors

import math

import numpy as np
import pytest

import ucalos


def test_aligned_spectrum_at_quarter_turn_is_flat():
    s = ucalos.singular_values(4, math.pi / 2, 0.0)
    assert np.allclose(s, 2.0, atol=1e-12)


def test_closed_form_matches_numerical_svd():
    cfg = ucalos.ArrayConfig(8, 0.004, 0.44, 0.44, 150.0)
    mis = ucalos.Misalignment(8, 0.1, 1.0, 0.05, 0.1, -0.07)
    h = ucalos.channel(cfg, mis)
    _, sigma, _ = ucalos.closed_form_svd(cfg, mis)
    _, sigma_num, _ = ucalos.numerical_svd(h)
    assert np.allclose(np.sort(sigma)[::-1], sigma_num, atol=1e-9)
    assert np.allclose(np.sort(np.linalg.svd(h, compute_uv=False))[::-1], sigma_num, atol=1e-9)


def test_design_table_value():
    d = ucalos.design(8, 15.0)
    assert abs(d["radius"] - 0.445) < 0.01
    assert abs(d["capacity"] - 38.79) < 0.15


def test_water_fill_spends_budget():
    p = ucalos.water_fill(np.array([3.0, 1.0, 0.2]), 10.0)
    assert abs(p.sum() - 10.0) < 1e-12
    assert np.all(p >= 0)


def test_sic_matches_log_det():
    rng = np.random.default_rng(4)
    h = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    rho = 10.0 / 4
    expected = np.log2(np.linalg.det(np.eye(4) + rho * h.conj().T @ h).real)
    assert abs(ucalos.zf_sic_rate(h, 10.0) - expected) < 1e-9


def test_errors_are_mapped():
    with pytest.raises(ValueError):
        ucalos.ArrayConfig(5)
    with pytest.raises(ucalos.NumericalError):
        ucalos.zf_rate(np.ones((4, 4), dtype=complex), 1.0)


def test_simulate_is_deterministic():
    a = ucalos.simulate_csv(trials=3, seed=9)
    assert a == ucalos.simulate_csv(trials=3, seed=9)
    assert a.splitlines()[0].startswith("scenario,n_antennas")
