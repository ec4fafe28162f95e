import numpy as np

from quiver_branes.catalog import build_bd_example, build_c_example
from quiver_branes.quiver_core import act, jordan_representation
from quiver_branes.types import Arrow, DimensionData, GaugeElement, Quiver, Representation


def three_vertex_quiver():
    q = Quiver(
        vertices=("u", "v", "w"),
        arrows=(Arrow("x", "u", "v"), Arrow("y", "v", "w"), Arrow("l", "w", "w")),
    )
    d = DimensionData(V={"u": 2, "v": 1, "w": 2}, W={"u": 1, "v": 0, "w": 1})
    return q, d


def random_gl(n, rng):
    """Well-conditioned random invertible matrix."""
    m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return np.eye(n) * 3.0 + 0.5 * m


def random_gauge(X: Representation, seed: int) -> Representation:
    rng = np.random.default_rng(seed)
    g = GaugeElement.from_blocks({v: random_gl(int(n), rng) for v, n in X.dims.V.items()})
    return act(g, None, X)


def commuting_adhm(n, r, seed):
    """A, B simultaneously diagonalizable, J = 0: ADHM holds, stable for generic I."""
    rng = np.random.default_rng(seed)
    P = random_gl(n, rng)
    Pinv = np.linalg.inv(P)
    D1 = np.diag(rng.standard_normal(n) + 1j * rng.standard_normal(n))
    D2 = np.diag(rng.standard_normal(n) + 1j * rng.standard_normal(n))
    I = rng.standard_normal((n, r)) + 1j * rng.standard_normal((n, r))
    return jordan_representation(P @ D1 @ Pinv, P @ D2 @ Pinv, I, np.zeros((r, n)))


def regular_rank_one(r, seed):
    """n = 1 data with I J = 0, I != 0 and J != 0."""
    rng = np.random.default_rng(seed)
    a, b = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    I = rng.standard_normal((1, r)) + 1j * rng.standard_normal((1, r))
    J = rng.standard_normal((r, 1)) + 1j * rng.standard_normal((r, 1))
    J = J - I.T * (I @ J) / (I @ I.T)
    return jordan_representation(a, b, I, J)


def mutilate(X: Representation) -> Representation:
    """Direct sum with a zero one-dimensional block: destabilized at [1:0:0]."""
    v = X.quiver.vertices[0]
    a = X.quiver.arrows[0].id
    n, r = X.I[v].shape

    def grow(m):
        out = np.zeros((n + 1, n + 1), dtype=complex)
        out[:n, :n] = m
        return out

    I = np.vstack([X.I[v], np.zeros((1, r))])
    J = np.hstack([X.J[v], np.zeros((r, 1))])
    return jordan_representation(grow(X.A[a]), grow(X.B[a]), I, J)


def regular_corpus():
    corpus = [regular_rank_one(2 + (s % 2), seed=s) for s in range(15)]
    corpus += [random_gauge(build_c_example(1).X, seed=100 + s) for s in range(5)]
    corpus += [random_gauge(build_bd_example(1).X, seed=200 + s) for s in range(5)]
    return corpus


def stability_corpus():
    """25 regular data followed by their 25 mutilated counterparts."""
    regular = regular_corpus()
    return regular, [mutilate(X) for X in regular]
