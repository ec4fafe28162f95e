import numpy as np
import pytest

from quiver_branes.errors import NotStableError, ShapeMismatchError
from quiver_branes.orbits import (
    intertwiner_space,
    is_identity_witness,
    is_moduli_fixed,
    orbit_witness,
)
from quiver_branes.quiver_core import act, jordan_representation
from quiver_branes.types import GaugeElement

from tests.generators import random_gl, regular_rank_one


def test_commutant_of_c_example_is_scalars(c_entry):
    """A stable datum only commutes with scalars."""
    space = intertwiner_space(c_entry.X, c_entry.X)
    assert space.dimension == 1
    k = space.basis[0]["0"]
    assert np.allclose(k, k[0, 0] * np.eye(2))


def test_witness_recovers_gauge_element(bd_entry, rng):
    """The witness between X and g . X is g itself."""
    g = random_gl(4, rng)
    Y = act(GaugeElement.from_blocks({"0": g}), None, bd_entry.X)
    k = orbit_witness(bd_entry.X, Y)
    assert k is not None
    np.testing.assert_allclose(k.g["0"], g, atol=1e-8)


def test_witness_on_rank_one_datum():
    X = regular_rank_one(2, seed=3)
    Y = act(GaugeElement.from_blocks({"0": np.array([[2.5 - 1.0j]])}), None, X)
    k = orbit_witness(X, Y)
    assert k is not None
    assert k.g["0"][0, 0] == pytest.approx(2.5 - 1.0j)


def test_no_witness_for_rescaled_datum(c_entry):
    """Rescaling changes the orbit, so no witness exists."""
    assert orbit_witness(c_entry.X, c_entry.X.scaled(2.0)) is None


def test_no_witness_between_different_dims(c_entry, bd_entry):
    with pytest.raises(ShapeMismatchError):
        orbit_witness(c_entry.X, bd_entry.X)


def test_identity_witness_helper():
    assert not is_identity_witness(None)
    assert is_identity_witness(GaugeElement.from_blocks({"0": np.eye(2)}))
    assert not is_identity_witness(GaugeElement.from_blocks({"0": -np.eye(2)}))


def test_c_example_is_fixed_with_identity_witness(c_entry):
    k = is_moduli_fixed(c_entry.spec, c_entry.X)
    assert k is not None
    assert is_identity_witness(k)


def test_gauged_c_example_is_fixed_up_to_gauge(c_entry, rng):
    """After a gauge change the c-example stays fixed with a non-identity witness."""
    g = GaugeElement.from_blocks({"0": random_gl(2, rng)})
    X = act(g, None, c_entry.X)
    k = is_moduli_fixed(c_entry.spec, X)
    assert k is not None
    assert not is_identity_witness(k)


def test_moduli_fixed_needs_stability(c_entry):
    X = jordan_representation(np.zeros((2, 2)), np.zeros((2, 2)), np.zeros((2, 2)), np.zeros((2, 2)))
    with pytest.raises(NotStableError):
        is_moduli_fixed(c_entry.spec, X)
