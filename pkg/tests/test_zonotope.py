"""Zonotope computations: determinant formulas against hull conversions."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from projgeo import bodies
from projgeo.sampling import RngSeed, sphere_points
from projgeo.zonotope import (Zonotope, projection_body, zonoid_min_projection,
                              zonotope_to_polytope)


def _zcube(n=3):
    """The cube [-1,1]^n as a zonotope (axis segments)."""
    return Zonotope(np.eye(n))


def test_cube_zonotope_basics():
    z = _zcube()
    assert z.volume() == pytest.approx(8.0, rel=1e-12)
    assert z.surface_area() == pytest.approx(24.0, rel=1e-12)
    assert z.support_batch(np.eye(3))[0] == pytest.approx(1.0)
    assert z.width_batch(np.eye(3))[0] == pytest.approx(2.0)


def test_zonotope_volume_matches_hull():
    gens = RngSeed(3).generator().standard_normal((6, 4))
    z = Zonotope(gens)
    hull = zonotope_to_polytope(z)
    assert z.volume() == pytest.approx(hull.volume(), rel=1e-9)
    assert z.surface_area() == pytest.approx(hull.surface_area(), rel=1e-9)


@given(seed=st.integers(0, 5000), m=st.integers(3, 7))
@settings(max_examples=15, deadline=None)
def test_zonotope_volume_matches_hull_random(seed, m):
    gens = RngSeed(seed).derive("volcheck").generator().standard_normal((m, 3))
    z = Zonotope(gens)
    assert z.volume() == pytest.approx(zonotope_to_polytope(z).volume(),
                                       rel=1e-9)


def test_exact_quermassintegrals_of_cube():
    z = _zcube()
    # codimension p: V_3 = 8, V_2 = S/3 = 8, V_1 = 2*omega_2 = 2pi
    assert z.quermassintegral_exact(0) == pytest.approx(8.0, rel=1e-12)
    assert z.quermassintegral_exact(1) == pytest.approx(8.0, rel=1e-12)
    assert z.quermassintegral_exact(2) == pytest.approx(2.0 * math.pi,
                                                        rel=1e-12)


def test_shadows_match_polytope_twin():
    gens = RngSeed(9).generator().standard_normal((6, 3))
    z = Zonotope(gens)
    poly = zonotope_to_polytope(z)
    dirs = sphere_points(3, 32, RngSeed(10).generator())
    assert np.allclose(z.shadow_volumes(dirs), poly.shadow_volumes(dirs),
                       rtol=1e-9)
    assert np.allclose(z.shadow_surfaces(dirs), poly.shadow_surfaces(dirs),
                       rtol=1e-8)


def test_projection_body_of_cube():
    pi_q3 = projection_body(_zcube())
    # h_{Pi K}(xi) = |P_{xi^perp} K| = 4 at coordinate directions
    assert np.allclose(pi_q3.support_batch(np.eye(3)), 4.0, rtol=1e-12)
    assert pi_q3.volume() == pytest.approx(512.0, rel=1e-10)


def test_merge_parallel_preserves_support():
    gens = np.vstack([np.eye(3), 2.0 * np.eye(3), [[1.0, 1.0, 0.0]]])
    z = Zonotope(gens)
    merged = z.merge_parallel()
    assert merged.n_generators == 4
    dirs = sphere_points(3, 40, RngSeed(12).generator())
    assert np.allclose(z.support_batch(dirs), merged.support_batch(dirs),
                       rtol=1e-12)


@given(seed=st.integers(0, 5000))
@settings(max_examples=20, deadline=None)
def test_support_is_positively_homogeneous_and_even(seed):
    gens = RngSeed(seed).derive("hom").generator().standard_normal((5, 3))
    z = Zonotope(gens)
    theta = sphere_points(3, 1, RngSeed(seed).derive("dir").generator())[0]
    h = z.support_batch(theta[None])[0]
    assert z.support_batch(3.0 * theta[None])[0] == pytest.approx(3.0 * h)
    # zonotopes centered at the origin are symmetric
    assert z.support_batch(-theta[None])[0] == pytest.approx(h, rel=1e-12)


def test_min_projection_of_cube():
    xi, value = zonoid_min_projection(_zcube(), seed=RngSeed(4))
    assert value == pytest.approx(4.0, rel=1e-9)
    assert np.abs(xi.coords).max() == pytest.approx(1.0, abs=1e-5)


def test_frame_shadow_volumes_match_projection():
    gens = RngSeed(21).generator().standard_normal((7, 4))
    z = Zonotope(gens)
    from projgeo.sampling import grassmann_frames

    frames = grassmann_frames(4, 2, 16, RngSeed(22).generator())
    vols = z.frame_shadow_volumes(frames)
    for frame, vol in zip(frames, vols):
        shadow = Zonotope(gens @ frame.T)
        assert vol == pytest.approx(shadow.volume(), rel=1e-10)
