import numpy as np
import pytest

from diracgeom.sampling import make_rng


@pytest.fixture
def rng() -> np.random.Generator:
    return make_rng(12345)
