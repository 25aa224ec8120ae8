"""Sanity checks on the reference oracles themselves."""

import numpy as np

import oracles


def test_fd_hyperbolic_plane():
    assert abs(oracles.fd_sectional(lambda x: np.diag([1.0, np.exp(-2 * x[0])]), [0.0, 0.0], 0, 1) + 1) < 1e-6


def test_fd_round_spheres():
    for radius, theta in [(1.0, 1.0), (2.0, 0.7)]:
        def g(x, r=radius):
            return r * r * np.diag([1.0, np.sin(x[0]) ** 2])

        assert abs(oracles.fd_sectional(g, [theta, 0.3], 0, 1) - 1 / radius**2) < 1e-6


def test_fd_flat_polar_coordinates():
    assert abs(oracles.fd_sectional(lambda x: np.diag([1.0, x[0] ** 2]), [1.5, 0.0], 0, 1)) < 1e-6


def test_brute_connection_is_torsion_free_and_metric():
    rng = np.random.default_rng(0)
    c = np.zeros((3, 3, 3))
    c[0, 1, 2], c[1, 0, 2] = 1.0, -1.0
    g = oracles.random_spd(rng, 3)
    gam = oracles.brute_connection(c, g)
    np.testing.assert_allclose(gam - gam.transpose(1, 0, 2), c, atol=1e-12)
    low = np.einsum("ijk,kl->ijl", gam, g)
    np.testing.assert_allclose(low + low.transpose(0, 2, 1), 0, atol=1e-12)
