import random

import pytest

from crnormal.coeffs import GaussianRational
from crnormal.equivalence import EquivalenceVerdict, equivalent
from crnormal.exceptions import TubularUnsupported
from crnormal.hypersurface import ModelClass, ModelPoly
from crnormal.normalform import transform
from crnormal.samples import random_germ, random_map, random_model
from crnormal.series import Weighting

from conftest import germ

EQ, DIST = EquivalenceVerdict.EQUIVALENT, EquivalenceVerdict.DISTINCT


def test_identical():
    g = germ({(1, 1, 0): 1, (2, 2, 0): 1}, 8)
    assert equivalent(g, g, 8).verdict is EQ


def test_sphere_and_its_image():
    s = germ({(1, 1, 0): 1}, 8)
    T = random_map(8, Weighting(2), random.Random(1), linear=True)
    assert equivalent(s, transform(s, T), 8).verdict is EQ


def test_types_differ():
    r = equivalent(germ({(1, 1, 0): 1}, 8), germ({(2, 2, 0): 1}, 8), 8)
    assert r.verdict is DIST and "types" in r.reason


def test_classes_differ():
    a = germ({(2, 2, 0): 1}, 8, 4)
    b = germ({(1, 3, 0): 1, (2, 2, 0): 3}, 8, 4)
    assert equivalent(a, b, 8).verdict is DIST


def test_tubular_rejected():
    g = germ({(1, 2, 0): 3, (2, 1, 0): 3}, 6, 3)
    with pytest.raises(TubularUnsupported):
        equivalent(g, g, 6)


def test_infinite_type_unsupported():
    g = germ({(1, 1, 1): 1}, 6)
    assert equivalent(g, g, 6).verdict is EquivalenceVerdict.UNSUPPORTED


@pytest.mark.parametrize(
    "k,klass",
    [(2, ModelClass.CIRCULAR), (4, ModelClass.CIRCULAR), (4, ModelClass.GENERIC), (5, ModelClass.GENERIC)],
)
def test_orbit_with_linear_parts(k, klass):
    rng = random.Random(31 * k)
    for _ in range(2):
        P = random_model(k, klass, rng)
        g = random_germ(P, 8, rng)
        T = random_map(8, g.weighting, rng, linear=True)
        r = equivalent(g, transform(g, T), 8)
        assert r.verdict is EQ, r.reason


def test_unrelated_germs_not_equivalent():
    rng = random.Random(12)
    P = ModelPoly(2, {1: 1})
    for _ in range(4):
        a, b = random_germ(P, 8, rng), random_germ(P, 8, rng)
        assert equivalent(a, b, 8).verdict is not EQ


def test_sign_of_invariant_is_seen():
    # c |z|^8 rescales by |lam|^-6 > 0, so its sign is an invariant
    a = germ({(1, 1, 0): 1, (4, 4, 0): 1}, 8)
    b = germ({(1, 1, 0): 1, (4, 4, 0): -1}, 8)
    assert equivalent(a, b, 8).verdict is DIST


def test_support_at_lowest_weight_is_seen():
    a = germ({(1, 1, 0): 1, (4, 2, 0): 1}, 8)
    b = germ({(1, 1, 0): 1, (5, 1, 0): 1}, 8)
    assert equivalent(a, b, 8).verdict is DIST


def test_rational_rescaling_found():
    # z -> 2z, w -> 4w carries |z|^2 + |z|^8 to |z|^2 + |z|^8 / 64
    a = germ({(1, 1, 0): 1, (4, 4, 0): 1}, 8)
    b = germ({(1, 1, 0): 1, (4, 4, 0): GaussianRational("1/64")}, 8)
    assert equivalent(a, b, 8).verdict is EQ


def test_irrational_rescaling_is_inconclusive():
    # the matching scale has |lam|^6 = 2
    a = germ({(1, 1, 0): 1, (4, 4, 0): 1}, 8)
    b = germ({(1, 1, 0): 1, (4, 4, 0): 2}, 8)
    r = equivalent(a, b, 8)
    assert r.verdict is EquivalenceVerdict.INCONCLUSIVE
    assert "Gaussian-rational" in r.reason
