import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from quiver_branes.hk_geometry import (
    ambient_real_dim,
    complex_moment,
    complex_moment_differential,
    from_real_vector,
    gamma,
    metric,
    moment_differentials,
    moment_maps,
    omega,
    real_moment,
    real_moment_differential,
    to_real_vector,
)
from quiver_branes.quiver_core import act, random_representation, random_unitary_pair
from quiver_branes.types import DimensionData, Quiver

TOL = 1e-10

jordan_dims = st.tuples(st.integers(1, 4), st.integers(0, 4))
seeds = st.integers(0, 2**16)


def _jordan(n, r, seed):
    return random_representation(Quiver.jordan(), DimensionData.jordan(n, r), seed)


def _close(X, Y, tol=TOL):
    return (X - Y).norm() <= tol * max(1.0, X.norm())


def _blocks_close(a, b, tol=TOL):
    return all(np.max(np.abs(a[v] - b[v]), initial=0.0) <= tol * max(1.0, np.max(np.abs(a[v]), initial=0.0)) for v in a)


@settings(max_examples=40, deadline=None)
@given(dims=jordan_dims, seed=seeds)
def test_quaternionic_relations(dims, seed):
    """Gamma_1 Gamma_2 = Gamma_3 and every Gamma_k squares to -1."""
    X = _jordan(*dims, seed)
    for k in (1, 2, 3):
        assert _close(gamma(k, gamma(k, X)), X.scaled(-1.0))
    assert _close(gamma(1, gamma(2, gamma(3, X))), X.scaled(-1.0))
    assert _close(gamma(1, gamma(2, X)), gamma(3, X))


@settings(max_examples=40, deadline=None)
@given(dims=jordan_dims, seed=seeds)
def test_metric_compatibility_and_antisymmetry(dims, seed):
    X = _jordan(*dims, seed)
    Y = _jordan(*dims, seed + 1)
    scale = max(1.0, X.norm() * Y.norm())
    for k in (1, 2, 3):
        assert metric(gamma(k, X), gamma(k, Y)) == pytest.approx(metric(X, Y), abs=TOL * scale)
        assert omega(k, X, Y) == pytest.approx(-omega(k, Y, X), abs=TOL * scale)


@settings(max_examples=40, deadline=None)
@given(dims=jordan_dims, seed=seeds)
def test_unitary_equivariance_of_moment_maps(dims, seed):
    """Moment maps transform by conjugation under unitary gauge."""
    X = _jordan(*dims, seed)
    g, h = random_unitary_pair(X.dims, seed)
    before = moment_maps(X)
    after = moment_maps(act(g, h, X))
    u = g.g["0"]
    for name in ("mu1", "mu2", "mu3", "muC"):
        expected = {"0": u @ getattr(before, name)["0"] @ u.conj().T}
        assert _blocks_close(getattr(after, name), expected, tol=1e-9)


@settings(max_examples=40, deadline=None)
@given(dims=jordan_dims, seed=seeds)
def test_complex_moment_combines_real_components(dims, seed):
    X = _jordan(*dims, seed)
    mu = moment_maps(X)
    assert _blocks_close(mu.muC, {"0": -mu.mu1["0"] - 1j * mu.mu2["0"]})


def test_relations_on_three_vertex_quiver(three_vertex):
    q, d = three_vertex
    X = random_representation(q, d, seed=7)
    Y = random_representation(q, d, seed=8)
    for k in (1, 2, 3):
        assert _close(gamma(k, gamma(k, X)), X.scaled(-1.0))
        assert metric(gamma(k, X), gamma(k, Y)) == pytest.approx(metric(X, Y), abs=1e-10)
    mu = moment_maps(X)
    for v in q.vertices:
        assert np.allclose(mu.muC[v], -mu.mu1[v] - 1j * mu.mu2[v], atol=1e-10)
        # anti-Hermitian real components
        assert np.allclose(mu.mu3[v], -mu.mu3[v].conj().T, atol=1e-12)


def test_jordan_formulas_match_commutators():
    X = _jordan(3, 2, seed=4)
    A, B, I, J = X.A["a"], X.B["a"], X.I["0"], X.J["0"]
    assert np.allclose(complex_moment(X)["0"], A @ B - B @ A + I @ J)
    Ah, Bh = A.conj().T, B.conj().T
    expected = 0.5j * (A @ Ah - Ah @ A + B @ Bh - Bh @ B + I @ I.conj().T - J.conj().T @ J)
    assert np.allclose(real_moment(X)["0"], expected)


def test_scalar_datum_sits_on_positive_level(ideal_point):
    """(0, 0, 1, 0) has mu3 = +i/2."""
    assert real_moment(ideal_point)["0"][0, 0] == pytest.approx(0.5j)


def test_c_example_real_moment_is_scalar(c_entry):
    mu3 = real_moment(c_entry.X)["0"]
    assert np.allclose(mu3, -1.5j * np.eye(2))


def test_differentials_match_finite_differences():
    """Analytic moment differentials against central differences."""
    X = _jordan(2, 2, seed=12)
    T = _jordan(2, 2, seed=13)
    eps = 1e-6
    plus, minus = X + T.scaled(eps), X - T.scaled(eps)
    fd_c = (complex_moment(plus)["0"] - complex_moment(minus)["0"]) / (2 * eps)
    fd_3 = (real_moment(plus)["0"] - real_moment(minus)["0"]) / (2 * eps)
    assert np.allclose(complex_moment_differential(X, T)["0"], fd_c, atol=1e-7)
    assert np.allclose(real_moment_differential(X, T)["0"], fd_3, atol=1e-7)
    d = moment_differentials(X, T)
    assert np.allclose(d[3]["0"], fd_3, atol=1e-7)


def test_real_flattening_round_trip(three_vertex):
    q, d = three_vertex
    X = random_representation(q, d, seed=1)
    vec = to_real_vector(X)
    assert vec.shape == (ambient_real_dim(X),)
    assert (from_real_vector(vec, X) - X).norm() == 0.0


def test_gamma_rejects_bad_index(ideal_point):
    with pytest.raises(ValueError):
        gamma(4, ideal_point)
