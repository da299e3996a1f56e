import os

import pytest
from hypothesis import HealthCheck, settings

from mwfamily.family import canonical_points, curve_of, make_triple
from mwfamily.polyring import Poly

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

t = Poly.t()


@pytest.fixture(scope="session")
def classic():
    """(f, g, h) = (t^2 - 1, 2t, t^2 + 1) with its model and canonical points."""
    tr = make_triple(t * t - 1, 2 * t, t * t + 1)
    m = curve_of(tr)
    return tr, m, canonical_points(tr)


@pytest.fixture(scope="session")
def inseparable():
    return make_triple(t * t - 1, t * t + 1)
