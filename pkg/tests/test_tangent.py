import pytest

from quiver_branes.catalog import build_bd_example
from quiver_branes.errors import LevelPreconditionError, NotExactFixedPointError, NotRegularError
from quiver_branes.involutions import apply
from quiver_branes.quiver_core import act, random_representation, random_unitary_pair
from quiver_branes.tangent import (
    brane_dimensions,
    exact_fixed_point,
    fixed_point_level,
    fixed_subspace,
    fixed_subspace_dim,
    orbit_directions,
    prepare_fixed_point,
    quotient_tangent,
)
from quiver_branes.types import LevelSpec


def test_fixed_point_level_follows_b(c_entry, bd_entry):
    assert fixed_point_level(c_entry.spec).c == 0.5
    assert fixed_point_level(bd_entry.spec).c == 0.0


def test_orbit_directions_have_full_rank_at_regular_point(c_entry):
    # free action: one real direction per generator of U(2)
    assert orbit_directions(c_entry.X).shape[1] == 4


def test_quotient_dimension_is_four_r_n(c_entry):
    """The quotient tangent space has real dimension 4rn."""
    Y, flow, level = prepare_fixed_point(c_entry.spec, c_entry.X)
    assert flow.converged
    frame = quotient_tangent(Y, level)
    assert frame.quotient_dim == 4 * 2 * 2
    assert frame.to_dict() == {"ambient_real_dim": 32, "quotient_real_dim": 16}


def test_real_c_variant_dimension(c_entry):
    report = brane_dimensions(c_entry.variants["ec"], c_entry.X)
    assert report["quotient_real_dim"] == 16
    assert report["fixed_real_dim"] == 8
    assert report["brane_type"] == "(A,B,A)"
    assert report["lagrangian"]["ok"]


def test_c_example_complex_brane(c_entry):
    report = brane_dimensions(c_entry.spec, c_entry.X)
    assert report["brane_type"] == "(B,B,B)"
    assert report["flow_converged"]
    assert report["lagrangian"]["ok"]


def test_bd_example_dimension(bd_entry):
    """The bd brane is half-dimensional of type (B,A,A) over level zero."""
    report = brane_dimensions(bd_entry.spec, bd_entry.X)
    assert report["level"] == 0.0
    assert report["quotient_real_dim"] == 64
    assert report["fixed_real_dim"] == 32
    assert report["brane_type"] == "(B,A,A)"
    assert report["lagrangian"]["ok"]


@pytest.mark.slow
def test_inflated_bd_example_dimension():
    entry = build_bd_example(2)
    report = brane_dimensions(entry.spec, entry.X)
    assert report["fixed_real_dim"] == 128


def test_symplectic_fixed_locus(symplectic_entry):
    """Symplectic data give a fixed locus of complex dimension n(r + 2)."""
    report = brane_dimensions(symplectic_entry.spec, symplectic_entry.X)
    assert report["quotient_real_dim"] == 8
    assert report["fixed_real_dim"] == symplectic_entry.expected["dims"]["fixed_real_dim"] == 8


def test_fixed_subspace_dim_summary(c_entry):
    spec = c_entry.variants["ec"]
    Y, _, level = prepare_fixed_point(spec, c_entry.X)
    summary = fixed_subspace_dim(spec, Y, quotient_tangent(Y, level))
    assert summary == {"real_dim": 8, "type_tag": "(A,B,A)"}


def test_fixed_subspace_is_invariant(c_entry):
    spec = c_entry.variants["ec"]
    Y, _, level = prepare_fixed_point(spec, c_entry.X)
    fixed = fixed_subspace(spec, Y, quotient_tangent(Y, level))
    assert fixed.invariance_defect <= 1e-8


def test_quotient_needs_regular_point(ideal_point):
    with pytest.raises(NotRegularError):
        quotient_tangent(ideal_point)


def test_quotient_needs_level(c_entry):
    # the catalog datum sits at mu3 = -3/2 i
    with pytest.raises(LevelPreconditionError):
        quotient_tangent(c_entry.X, LevelSpec(0.5))


def test_unitary_rotation_is_regauged_to_an_exact_fixed_point(c_entry):
    """A point fixed only up to a unitary gauge is moved back before the count."""
    spec = c_entry.variants["ec"]
    Y, _, level = prepare_fixed_point(spec, c_entry.X)
    g, _ = random_unitary_pair(Y.dims, seed=8)
    Z = act(g, None, Y)
    assert (apply(spec, Z) - Z).norm() > 1e-8 * max(1.0, Z.norm())

    moved, u = exact_fixed_point(spec, Z)
    assert u is not None and u.unitary_flag
    assert (apply(spec, moved) - moved).norm() <= 1e-8 * max(1.0, moved.norm())

    fixed = fixed_subspace(spec, Z, quotient_tangent(Z, level))
    assert fixed.real_dim == 8
    assert fixed.invariance_defect <= 1e-8


def test_brane_dimensions_of_rotated_point(c_entry):
    spec = c_entry.variants["ec"]
    g, _ = random_unitary_pair(c_entry.dims, seed=3)
    report = brane_dimensions(spec, act(g, None, c_entry.X))
    assert report["regauged"]
    assert report["fixed_real_dim"] == 8
    assert report["lagrangian"]["ok"]


def test_point_outside_the_orbit_is_rejected(c_entry):
    spec = c_entry.variants["ec"]
    X = random_representation(c_entry.quiver, c_entry.dims, seed=3)
    with pytest.raises(NotExactFixedPointError) as info:
        exact_fixed_point(spec, X)
    assert not info.value.details["orbit_fixed"]


def test_exact_fixed_point_is_returned_unchanged(c_entry):
    moved, u = exact_fixed_point(c_entry.spec, c_entry.X)
    assert u is None
    assert moved is c_entry.X
