import numpy as np
import pytest

from naharm.htype import build_htype
from naharm.quad import DEFAULT_SPEC


@pytest.fixture(scope="session")
def desk():
    """The desk-scale algebra k=1, b=1 (m=2, n=4, Q=2)."""
    return build_htype(1, 1)


@pytest.fixture(scope="session")
def quat():
    """The quaternionic algebra k=3, b=1 (m=4, n=8, Q=5)."""
    return build_htype(3, 1)


@pytest.fixture(scope="session")
def spec():
    return DEFAULT_SPEC


@pytest.fixture()
def rng():
    return np.random.default_rng(1234)
