# SPDX-License-Identifier: Apache-2.0
#
# nfisac: near-field sensing and communication simulation library
# Copyright (C) 2026 The nfisac authors
"""Smoke tests for the Python bindings."""

import math

import numpy as np
import pytest

import nfisac


@pytest.fixture(scope="module")
def paper():
    return nfisac.paper_default_scenario()


def test_rayleigh_and_responses():
    geom = nfisac.ArrayGeometry(256, 30e9)
    assert nfisac.rayleigh_distance(geom) == pytest.approx(324.9, rel=1e-3)
    a = nfisac.nearfield_focusing(geom, nfisac.PolarPoint.from_degrees(45, 5))
    assert np.linalg.norm(a) == pytest.approx(1.0)
    ff = nfisac.farfield_steering(geom, 0.0)
    assert np.allclose(ff, 1 / 16)


def test_dof_limits():
    geom = nfisac.ArrayGeometry(64, 30e9)
    far = 10 * nfisac.rayleigh_distance(geom)
    assert nfisac.effective_dof(geom, geom, far) == 1
    assert nfisac.effective_dof(geom, geom, 1.0) > 1
    assert nfisac.p2p_los_channel(geom, geom, 2.0).shape == (64, 64)


def test_zero_forcing_nulls(paper):
    h = nfisac.user_channels(paper)
    w = nfisac.zf_precoder(h)
    leak = abs(np.vdot(h[1], w[:, 0])) ** 2 / abs(np.vdot(h[0], w[:, 0])) ** 2
    assert leak < 1e-10


def test_singular_channel_raises():
    geom = nfisac.ArrayGeometry(16, 30e9)
    a = nfisac.farfield_steering(geom, 0.0)
    with pytest.raises(nfisac.Error, match="numerical"):
        nfisac.zf_precoder([a, a])


def test_fisher_and_music(paper):
    geom = paper.tx_geometry
    target = paper.target
    s = nfisac.nearfield_focusing(geom, target)
    res = nfisac.fisher_information(geom, geom, target, np.outer(s, s.conj()), 64, 0.03)
    assert res.identifiable
    assert 0 < res.rcrb_angle < math.radians(1)

    est = nfisac.music(geom, [target], snr_db=20, snapshots=200)
    assert len(est) == 1
    assert est[0].angle_deg == pytest.approx(45, abs=1)


def test_min_power():
    g = np.diag([4.0, 2.0, 1.0])
    sol = nfisac.min_power(g, 3.0, 0.25, 0.5)
    assert sol.feasible
    assert sol.powers == pytest.approx([0.375, 0.75, 0.25])


def test_runners_and_errors(paper):
    files = nfisac.run_power(paper)
    assert list(files) == ["power.csv"]
    assert files["power.csv"].startswith("# nfisac power seed=1")
    with pytest.raises(nfisac.Error, match="not-found"):
        nfisac.load_scenario("/nonexistent.json")
    with pytest.raises(nfisac.Error, match="noise_power_w"):
        nfisac.parse_scenario('{"noise_power_w": -1}')
