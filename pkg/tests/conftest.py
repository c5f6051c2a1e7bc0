import os
import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

from sumrank_kit.field import GF  # noqa: E402

FIELDS = {
    "F4": GF(2, 2),
    "F8": GF(2, 3, [1, 1, 0, 1]),
    "F9": GF(3, 2),
    "F27": GF(3, 3, [1, 2, 0, 1]),
    "F81": GF(3, 4),
    "F25": GF(5, 2),
}


@pytest.fixture(params=sorted(FIELDS))
def field(request):
    return FIELDS[request.param]


@pytest.fixture
def rng():
    return np.random.default_rng(2024)
