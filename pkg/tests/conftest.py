import numpy as np
import pytest

from metamono.basis import DiskPoint
from metamono.bessel import default_zero_table
from metamono.diskquad import make_rule


@pytest.fixture(scope="session")
def table():
    return default_zero_table()


@pytest.fixture(scope="session")
def rule():
    # the full verification rule; built once and shared read-only
    return make_rule(200, 256)


@pytest.fixture(scope="session")
def small_rule():
    return make_rule(80, 64)


@pytest.fixture(scope="session")
def interior_points():
    g = np.linspace(-0.9, 0.9, 21)
    X, Y = np.meshgrid(g, g)
    keep = np.hypot(X, Y) <= 0.9
    return DiskPoint.from_cartesian(X[keep], Y[keep])
