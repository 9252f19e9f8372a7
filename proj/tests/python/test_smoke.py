import math

import numpy as np
import pytest

import manilap as ml


def small_graph(n=40, t=0.05, alpha=0.0):
    m = ml.Manifold.interval(0.0, 1.0)
    cloud = ml.sample(m, ml.Density.uniform(m), n, ml.SampleMode.Equispaced, 0)
    return ml.build_graph(cloud, ml.GraphScheme.full_gaussian(), ml.KernelConfig(t, 1), alpha)


def test_constants():
    c = ml.constants(1)
    assert c.C1 == pytest.approx(math.sqrt(math.pi), rel=1e-12)
    assert c.C4 / c.C3 == pytest.approx(1.0 / math.sqrt(math.pi), rel=1e-12)


def test_graph_shapes_and_symmetry():
    g = small_graph()
    W = np.asarray(g.W)
    assert W.shape == (40, 40)
    assert np.array_equal(W, W.T)
    assert np.all(np.asarray(g.degree) > 0)


def test_unnormalized_laplacian_annihilates_constants():
    g = small_graph(alpha=0.5)
    L = np.asarray(ml.laplacian_matrix(g, ml.LaplacianKind.Unnormalized))
    assert np.max(np.abs(L @ np.ones(40))) <= 1e-10 * np.abs(L).max() * 40


def test_spectrum_conjugation():
    g = small_graph()
    spec = ml.graph_spectrum(g)
    d = np.asarray(g.W_alpha).sum(axis=1)
    dev = np.max(np.abs(np.asarray(spec.psi) - np.sqrt(d)[:, None] * np.asarray(spec.phi)))
    assert dev <= 1e-8
    ev = np.asarray(spec.eigenvalues)
    assert abs(ev[0]) <= 1e-10
    assert np.all(np.diff(ev) >= -1e-12)


def test_pointwise_interior_limit():
    m = ml.Manifold.interval(0.0, 1.0)
    cloud = ml.sample(m, ml.Density.uniform(m), 2000, ml.SampleMode.Equispaced, 0)
    g = ml.build_graph(cloud, ml.GraphScheme.full_gaussian(), ml.KernelConfig(1e-5, 1), 0.0)
    fn = ml.test_function("x3")
    v = ml.apply_pointwise(g, ml.LaplacianKind.RandomWalk, fn, np.array([0.5])) / 1e-5
    assert v == pytest.approx(-1.5 * 0.5, rel=0.05)


def test_quadform_coefficient():
    rep = ml.quadform_experiment(301, 0.0, "x", [10.0 ** (-k) for k in range(0, 6)])
    assert rep.theory == pytest.approx(0.25 * math.sqrt(math.pi), rel=1e-12)
    assert rep.max_coefficient == pytest.approx(rep.theory, rel=0.02)


def test_fd_equivalence_exact():
    rep = ml.fd_equivalence(5, 5)
    assert rep.max_abs_difference == 0.0


def test_kernel_prime_diagonal():
    rep = ml.kernel_experiment(101, 1e-4, 0.0, 0.25, 1000)
    assert rep.k_prime[rep.x0_index] == 0.25
    assert rep.max_series_vs_closed <= 1e-2


def test_sampling_is_seeded():
    m = ml.Manifold.real_line()
    a = ml.sample(m, ml.Density.gaussian_mixture(), 64, ml.SampleMode.Iid, 7)
    b = ml.sample(m, ml.Density.gaussian_mixture(), 64, ml.SampleMode.Iid, 7)
    assert np.array_equal(np.asarray(a.points), np.asarray(b.points))


def test_invalid_arguments_raise():
    with pytest.raises(ValueError):
        ml.test_function("nope")
    with pytest.raises(ValueError):
        ml.fd_equivalence(1, 1)
