import numpy as np
import pytest

from hardylab.circle import CircleGrid


@pytest.fixture
def grid64():
    return CircleGrid(64)


@pytest.fixture
def grid1024():
    return CircleGrid(1024)


@pytest.fixture
def rng():
    return np.random.default_rng(20250810)
