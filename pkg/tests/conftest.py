import math

import numpy as np
import pytest

import steering_lab as sl


@pytest.fixture
def physical_cms():
    """Factory for random physical standard-form triples.

    Uses the closed-form physicality bound gamma^2 <= a*b - 1 - |a - b|,
    so every draw satisfies nu_- >= 1 by construction.
    """

    def make(count, seed=1234, vmax=3.5):
        rng = np.random.default_rng(seed)
        cms = []
        for _ in range(count):
            a = rng.uniform(1.0, vmax)
            b = rng.uniform(1.0, vmax)
            u_max = a * b - 1.0 - abs(a - b)
            g = rng.uniform(-1.0, 1.0) * math.sqrt(max(u_max, 0.0))
            cms.append(sl.StandardFormCM(a, b, g))
        return cms

    return make


@pytest.fixture(params=["numpy", "numba"])
def backend(request):
    """Run a test under both kernel backends, restoring the default after."""
    before = sl.active_backend()
    try:
        sl.use_backend(request.param)
    except RuntimeError:
        pytest.skip("numba not importable")
    yield request.param
    sl.use_backend(before)
