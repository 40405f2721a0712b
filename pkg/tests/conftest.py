import numpy as np
import pytest

from qhl.subspace import spin_projector


@pytest.fixture
def rng():
    return np.random.default_rng(20111)


@pytest.fixture
def zp():
    return spin_projector("z", 1)


@pytest.fixture
def zm():
    return spin_projector("z", -1)


@pytest.fixture
def xp():
    return spin_projector("x", 1)


@pytest.fixture
def xm():
    return spin_projector("x", -1)
