import random

import pytest
from hypothesis import settings, HealthCheck

from crnormal.coeffs import GaussianRational
from crnormal.hypersurface import Germ
from crnormal.series import RealSeries3, Weighting

settings.register_profile(
    "default",
    max_examples=25,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def G(re=0, im=0):
    return GaussianRational(re, im)


def germ(terms, trunc, u_weight=2):
    """Germ from ``{(i, j, m): coeff}``; mirror terms are filled in."""
    full = {}
    for (i, j, m), c in terms.items():
        c = GaussianRational(c) if not isinstance(c, GaussianRational) else c
        full[(i, j, m)] = c
        full.setdefault((j, i, m), c.conjugate())
    return Germ(RealSeries3(full, trunc, Weighting(u_weight)))


@pytest.fixture
def rng():
    return random.Random(20261019)
