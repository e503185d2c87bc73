import numpy as np
import pytest

from optosqueeze.sweep import fig2_base


@pytest.fixture
def base():
    return fig2_base()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
