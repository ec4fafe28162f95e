import numpy as np
import pytest

from quiver_branes.catalog import build_bd_example, build_c_example, build_symplectic
from quiver_branes.quiver_core import jordan_representation

from tests.generators import three_vertex_quiver


@pytest.fixture
def ideal_point():
    # n = r = 1 datum (0, 0, 1, 0): the ideal sheaf of the origin
    return jordan_representation(0, 0, 1, 0)


@pytest.fixture
def c_entry():
    return build_c_example(1)


@pytest.fixture
def bd_entry():
    return build_bd_example(1)


@pytest.fixture
def symplectic_entry():
    entry = build_symplectic(n=1, r=2, seed=0)
    assert entry is not None
    return entry


@pytest.fixture
def three_vertex():
    return three_vertex_quiver()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
