"""
    Shared fixtures

    The modules live at the repository root; pytest puts this directory on
    sys.path because the conftest sits here.
"""

import pytest

from field import GridGeometry
from states import build_mub_tables


@pytest.fixture(scope="session")
def table():
    return build_mub_tables()


@pytest.fixture(scope="session")
def small_grid():
    """Fast grid for unit tests"""
    return GridGeometry(128, 160, 110)


@pytest.fixture(scope="session")
def grid():
    """768x1024 grid with a 691 sample aperture"""
    return GridGeometry()
