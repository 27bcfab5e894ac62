"""Seed derivation, sphere/Grassmannian sampling, and the minimizers."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from projgeo.sampling import (RngSeed, grassmann_frames, mc_estimate,
                              minimize_on_grassmannian, minimize_on_sphere,
                              sphere_points)


def test_rng_seed_reproducible():
    a = RngSeed(7).derive("panel", 3).generator().standard_normal(8)
    b = RngSeed(7).derive("panel", 3).generator().standard_normal(8)
    assert np.array_equal(a, b)


def test_rng_labels_decorrelate_streams():
    a = RngSeed(7).derive("panel", 3).generator().standard_normal(8)
    b = RngSeed(7).derive("panel", 4).generator().standard_normal(8)
    c = RngSeed(8).derive("panel", 3).generator().standard_normal(8)
    assert not np.allclose(a, b)
    assert not np.allclose(a, c)


@given(n=st.integers(2, 6), count=st.integers(1, 64),
       seed=st.integers(0, 2**31 - 1))
@settings(max_examples=40, deadline=None)
def test_sphere_points_are_unit_rows(n, count, seed):
    pts = sphere_points(n, count, RngSeed(seed).generator())
    assert pts.shape == (count, n)
    assert np.allclose(np.linalg.norm(pts, axis=1), 1.0, atol=1e-12)


def test_sphere_points_are_roughly_isotropic():
    pts = sphere_points(4, 40_000, RngSeed(0).generator())
    # E[theta_i] = 0 and E[theta_i^2] = 1/n, up to sampling error
    assert np.abs(pts.mean(axis=0)).max() < 0.02
    assert np.abs((pts ** 2).mean(axis=0) - 0.25).max() < 0.01


@given(n=st.integers(2, 6), k=st.integers(1, 4),
       seed=st.integers(0, 2**31 - 1))
@settings(max_examples=40, deadline=None)
def test_grassmann_frames_are_orthonormal(n, k, seed):
    k = min(k, n)
    frames = grassmann_frames(n, k, 8, RngSeed(seed).generator())
    assert frames.shape == (8, k, n)
    grams = np.einsum("bij,bkj->bik", frames, frames)
    assert np.allclose(grams, np.eye(k), atol=1e-10)


def test_mc_estimate_matches_sample_statistics():
    vals = np.arange(10.0)
    est = mc_estimate(vals)
    assert est.value == pytest.approx(4.5)
    assert est.stderr == pytest.approx(np.std(vals, ddof=1) / np.sqrt(10.0))
    assert est.n_samples == 10


def test_minimize_on_sphere_linear_objective():
    a = np.array([1.0, 2.0, 2.0])
    x, v = minimize_on_sphere(lambda d: float(a @ d.coords), 3,
                              seed=RngSeed(1))
    assert v == pytest.approx(-3.0, abs=1e-8)  # min <a, theta> = -|a|
    assert np.allclose(x.coords, -a / 3.0, atol=1e-4)


def test_minimize_on_sphere_vectorized_matches_scalar():
    a = np.array([0.5, -1.0, 2.0, 1.0])
    _, v_scalar = minimize_on_sphere(lambda d: float(a @ d.coords), 4,
                                     seed=RngSeed(2))
    _, v_vec = minimize_on_sphere(lambda xs: xs @ a, 4, seed=RngSeed(2),
                                  vectorized=True)
    assert v_vec == pytest.approx(v_scalar, rel=1e-9)
    assert v_vec == pytest.approx(-float(np.linalg.norm(a)), abs=1e-8)


def test_sphere_minimum_undercuts_random_probes():
    def objective(xs):
        return np.cos(3.0 * xs[:, 0]) + xs[:, 1] ** 2

    _, v = minimize_on_sphere(objective, 4, seed=RngSeed(3), vectorized=True)
    probes = objective(sphere_points(4, 5000, RngSeed(4).generator()))
    assert v <= probes.min() + 1e-9


def test_minimize_on_grassmannian_avoids_a_vector():
    e1 = np.zeros(3)
    e1[0] = 1.0

    def objective(frames):
        return np.einsum("bkj,j->bk", frames, e1).__pow__(2).sum(axis=1)

    frame, v = minimize_on_grassmannian(objective, 3, 2, seed=RngSeed(5),
                                        vectorized=True)
    # a 2-plane in R^3 orthogonal to e1 exists, so the projection vanishes
    assert v == pytest.approx(0.0, abs=1e-8)
    assert np.allclose(frame.frame @ e1, 0.0, atol=1e-4)


def test_minimizer_rejects_bad_restarts():
    with pytest.raises(ValueError):
        minimize_on_sphere(lambda d: 0.0, 3, restarts=0)
