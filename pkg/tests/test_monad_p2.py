import numpy as np
import pytest

from quiver_branes.errors import (
    AdhmViolationError,
    InvalidSpecError,
    PointNotOnLineError,
    SpecMismatchError,
    WrongQuiverError,
    ZeroPointError,
)
from quiver_branes.hk_geometry import complex_moment
from quiver_branes.monad_p2 import (
    P2_KINDS,
    P2Involution,
    P2Point,
    dual_monad_residual,
    fiber_dim,
    framing_check,
    monad_at,
    monad_ranks,
    pullback_spec,
    real_structure_residual,
    sample_points,
    verify_monad_square,
)
from quiver_branes.quiver_core import random_representation
from quiver_branes.types import DimensionData, Quiver

from tests.generators import commuting_adhm

POINTS = sample_points(40, seed=7)


def _random_jordan(n, r, seed):
    return random_representation(Quiver.jordan(), DimensionData.jordan(n, r), seed=seed)


def _involution(kind):
    if kind in ("sigma2", "tau2"):
        return P2Involution(kind, t=0.6, z=0.8)
    return P2Involution(kind)


# ============================================================
# Monad maps
# ============================================================

def test_beta_alpha_is_x0_squared_times_complex_moment():
    """beta alpha equals x0 squared times the complex moment at every point."""
    X = _random_jordan(3, 2, seed=11)
    mu = complex_moment(X)["0"]
    for p in POINTS:
        ev = monad_at(X, p)
        assert np.allclose(ev.beta @ ev.alpha, p.x0 ** 2 * mu, atol=1e-10)


def test_monad_shapes():
    X = _random_jordan(3, 2, seed=1)
    ev = monad_at(X, P2Point(1, 2, 3))
    assert ev.alpha.shape == (8, 3)
    assert ev.beta.shape == (3, 8)


def test_ideal_point_fiber_jumps_at_origin(ideal_point):
    """The ideal sheaf of the origin has a two-dimensional fiber at [1:0:0]."""
    assert fiber_dim(ideal_point, P2Point(1, 0, 0)) == 2
    assert fiber_dim(ideal_point, P2Point(0, 1, 0)) == 1
    assert fiber_dim(ideal_point, P2Point(1, 0.5, -0.25j)) == 1


def test_regular_entries_have_constant_fiber(c_entry, bd_entry):
    """Regular catalog data give locally free sheaves of rank r."""
    for entry in (c_entry, bd_entry):
        r = entry.dims.W["0"]
        assert {fiber_dim(entry.X, p) for p in POINTS} == {r}


def test_monad_ranks_of_regular_datum(c_entry):
    ranks = monad_ranks(c_entry.X, P2Point(0.3, 1, -2))
    assert ranks == {"alpha_rank": 2, "beta_rank": 2, "fiber_dim": 2}


def test_sample_points_are_seeded():
    """Same seed, same points, plus the six coordinate points."""
    a = sample_points(5, seed=3)
    b = sample_points(5, seed=3)
    assert len(a) == 11
    assert all(p.same_point(q) for p, q in zip(a, b))


# ============================================================
# Framing, duality and real structure
# ============================================================

def test_framing_is_an_isomorphism_at_infinity(c_entry):
    cond = framing_check(c_entry.X, P2Point(0, 1, 0))
    assert np.isfinite(cond)
    assert cond < 1e8


def test_framing_check_off_the_line(c_entry):
    with pytest.raises(PointNotOnLineError):
        framing_check(c_entry.X, P2Point(1, 0, 0))


def test_dual_monad_identity_holds_for_any_datum():
    """The dual monad identity holds for arbitrary data, ADHM or not."""
    X = _random_jordan(2, 3, seed=5)
    for p in POINTS[:10]:
        assert dual_monad_residual(X, p) <= 1e-10


def test_real_structure_of_real_datum(c_entry):
    for p in POINTS[:10]:
        assert real_structure_residual(c_entry.X, p) <= 1e-10


def test_real_structure_fails_for_complex_datum():
    X = _random_jordan(2, 2, seed=9)
    assert real_structure_residual(X, P2Point(1, 1j, 0.5)) > 1e-3


# ============================================================
# Involutions of P^2
# ============================================================

@pytest.mark.parametrize("kind", P2_KINDS)
def test_p2_involutions_square_to_identity(kind):
    """Every unitary involution of the plane squares to the identity."""
    inv = _involution(kind)
    for p in POINTS[:10]:
        assert inv(inv(p)).same_point(p)


@pytest.mark.parametrize("kind", P2_KINDS)
def test_monad_square_commutes_for_pullback_words(kind):
    """Pulled-back words make the monad square commute on commuting data."""
    X = commuting_adhm(3, 2, seed=4)
    inv = _involution(kind)
    spec = pullback_spec(inv, 3, 2)
    assert verify_monad_square(spec, inv, X, sample_count=20, seed=1) <= 1e-10


def test_monad_square_for_twisted_c_example(c_entry):
    inv = P2Involution("sigma1")
    assert verify_monad_square(c_entry.spec, inv, c_entry.X, sample_count=20) <= 1e-10


def test_monad_square_rejects_mismatched_word(c_entry):
    """A word inducing a different plane involution is refused."""
    inv = P2Involution("tau0")
    with pytest.raises(SpecMismatchError):
        verify_monad_square(pullback_spec(P2Involution("sigma1"), 2, 2), inv, c_entry.X)


def test_monad_square_rejects_mismatched_parameters():
    X = commuting_adhm(2, 1, seed=2)
    spec = pullback_spec(P2Involution("sigma2", t=0.6, z=0.8), 2, 1)
    with pytest.raises(SpecMismatchError):
        verify_monad_square(spec, P2Involution("sigma2", t=0.8, z=0.6), X)


# ============================================================
# Errors
# ============================================================

def test_zero_point_is_rejected(c_entry):
    with pytest.raises(ZeroPointError):
        P2Point(0, 0, 0).normalized()
    with pytest.raises(ZeroPointError):
        monad_at(c_entry.X, P2Point(0, 0, 0))


def test_monad_needs_jordan_quiver(three_vertex):
    q, d = three_vertex
    with pytest.raises(WrongQuiverError):
        monad_at(random_representation(q, d, seed=0), P2Point(1, 0, 0))


def test_fiber_dim_needs_adhm():
    with pytest.raises(AdhmViolationError):
        fiber_dim(_random_jordan(2, 1, seed=3), P2Point(1, 0, 0))


@pytest.mark.parametrize(
    "kwargs",
    [
        {"kind": "sigma3"},
        {"kind": "sigma2", "t": 1.0, "z": 0.5},
        {"kind": "tau2", "t": 0.6, "z": 0.8j},
    ],
)
def test_invalid_p2_involutions(kwargs):
    with pytest.raises(InvalidSpecError):
        P2Involution(**kwargs)
