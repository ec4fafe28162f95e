import numpy as np
import pytest
import scipy.linalg

from quiver_branes.errors import LevelPreconditionError, NotStableError
from quiver_branes.hk_geometry import complex_moment, moment_residual, real_moment
from quiver_branes.kempf_flow import (
    flow_to_level,
    flowed_point,
    level_gradient,
    level_objective,
    stable_side_sign,
)
from quiver_branes.quiver_core import act, random_representation
from quiver_branes.types import GaugeElement, LevelSpec

from tests.generators import mutilate, random_gauge


def _hermitian(n, rng):
    m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return 0.5 * (m + m.conj().T)


def _moved(X, S, eps):
    g = {v: scipy.linalg.expm(eps * m) for v, m in S.items()}
    return act(GaugeElement(g), None, X)


def test_stable_side_is_positive():
    assert stable_side_sign() == 1


def test_gradient_matches_finite_differences(three_vertex, rng):
    """Objective gradient against central differences on a three-vertex quiver."""
    q, d = three_vertex
    X = random_representation(q, d, seed=3)
    level = LevelSpec(0.5)
    S = {v: _hermitian(int(n), rng) for v, n in d.V.items()}
    grad = level_gradient(X, level)

    eps = 1e-6
    fd = (level_objective(_moved(X, S, eps), level) - level_objective(_moved(X, S, -eps), level)) / (2 * eps)
    predicted = sum(np.sum(grad[v] * np.conj(S[v])).real for v in S)
    assert predicted == pytest.approx(fd, rel=1e-5, abs=1e-7)


def test_gradient_is_hermitian(c_entry):
    grad = level_gradient(c_entry.X, LevelSpec(0.5))
    assert np.allclose(grad["0"], grad["0"].conj().T)


def test_c_example_flows_to_half(c_entry):
    """Flowing the c-example lands on level one half."""
    X = random_gauge(c_entry.X, seed=5)
    result = flow_to_level(X, LevelSpec(0.5))
    assert result.converged
    assert result.residual <= 1e-8
    Y = flowed_point(X, result)
    assert np.allclose(real_moment(Y)["0"], 0.5j * np.eye(2), atol=1e-8)
    assert moment_residual(complex_moment(Y)) <= 1e-8
    assert result.max_complex_residual <= 1e-8


def test_flow_gauge_is_positive_hermitian(c_entry):
    result = flow_to_level(c_entry.X, LevelSpec(0.5))
    g = result.g.g["0"]
    assert np.allclose(g, g.conj().T)
    assert np.all(np.linalg.eigvalsh(g) > 0)


def test_objective_never_increases(c_entry):
    """Accepted steps are monotone in the objective."""
    result = flow_to_level(c_entry.X, LevelSpec(0.5))
    history = result.objective_history
    assert all(b <= a for a, b in zip(history, history[1:]))


def test_bd_example_flows_to_zero(bd_entry):
    result = flow_to_level(bd_entry.X, LevelSpec(0.0))
    assert result.converged
    Y = flowed_point(bd_entry.X, result)
    assert np.allclose(real_moment(Y)["0"], 0.0, atol=1e-8)


def test_point_already_on_level_needs_no_steps(ideal_point):
    """A datum already on the level returns without iterating."""
    result = flow_to_level(ideal_point, LevelSpec(0.5))
    assert result.converged
    assert result.iterations == 0


def test_ideal_point_flows_to_higher_level(ideal_point):
    result = flow_to_level(ideal_point, LevelSpec(1.0))
    assert result.converged
    Y = flowed_point(ideal_point, result)
    assert abs(Y.I["0"][0, 0]) == pytest.approx(np.sqrt(2.0), rel=1e-8)


def test_report_fields(c_entry):
    report = flow_to_level(c_entry.X).to_dict()
    assert set(report) == {
        "g", "residual", "iterations", "converged", "level", "stable_side_sign", "max_complex_residual",
    }
    assert report["level"] == 0.5


def test_flow_needs_adhm(three_vertex):
    q, d = three_vertex
    with pytest.raises(LevelPreconditionError):
        flow_to_level(random_representation(q, d, seed=0))


def test_flow_needs_stability_on_stable_side(c_entry):
    """Positive levels need a stable starting point."""
    with pytest.raises(NotStableError):
        flow_to_level(mutilate(c_entry.X), LevelSpec(0.5))


@pytest.mark.parametrize("c", [0.0, -0.5])
def test_ideal_point_cannot_reach_costable_side(ideal_point, c):
    with pytest.raises(NotStableError):
        flow_to_level(ideal_point, LevelSpec(c))
