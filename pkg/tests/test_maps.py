import random

import pytest

from crnormal.coeffs import GaussianRational
from crnormal.exceptions import NonInvertibleLinearPart, WeightMismatch
from crnormal.maps import (
    CircularAutomorphism,
    FormalMap,
    SphereAutomorphism,
    circular_map,
    linear_map,
    sphere_map,
)
from crnormal.samples import random_map
from crnormal.series import RealSeries3, Weighting
from crnormal.transform import transform_series

W2 = Weighting(2)


def sphere(n):
    return RealSeries3({(1, 1, 0): 1}, n, W2)


def circle(l, n):
    return RealSeries3({(l, l, 0): 1}, n, Weighting(2 * l))


def test_invalid_maps():
    with pytest.raises(NonInvertibleLinearPart):
        FormalMap.from_coeffs({(1, 0): -1}, {}, 4, W2)
    with pytest.raises(NonInvertibleLinearPart):
        FormalMap.from_coeffs({}, {(0, 1): GaussianRational(0, 1)}, 4, W2)
    with pytest.raises(NonInvertibleLinearPart):
        FormalMap.from_coeffs({}, {(1, 0): 1}, 4, W2)
    with pytest.raises(WeightMismatch):
        sphere_map(1, 0, 0, 4, Weighting(3))


@pytest.mark.parametrize("seed", range(6))
def test_sphere_automorphisms_preserve_sphere(seed):
    rng = random.Random(seed)
    a = GaussianRational(rng.randint(-2, 2), rng.randint(-2, 2))
    h = SphereAutomorphism(a=a, delta=rng.choice([1, 2, -1]), phase=GaussianRational(0, 1), mu=rng.randint(-2, 2))
    assert transform_series(sphere(8), h.to_map(8, W2)) == sphere(8)


def test_sphere_map_with_irrational_modulus():
    # |1 + i|^2 = 2 is rational even though |1 + i| is not
    T = sphere_map(GaussianRational(1, 1), GaussianRational(1), 1, 8)
    assert transform_series(sphere(8), T) == sphere(8)


@pytest.mark.parametrize("l", [1, 2, 3])
def test_circular_automorphisms_preserve_model(l):
    h = CircularAutomorphism(l=l, delta=2, phase=GaussianRational(0, -1), mu=1)
    n = 4 * l + 4
    assert transform_series(circle(l, n), h.to_map(n)) == circle(l, n)
    T = circular_map(l, GaussianRational(1), -3, n)
    assert transform_series(circle(l, n), T) == circle(l, n)


def test_composition_is_associative_and_matches_transform():
    rng = random.Random(3)
    A, B = random_map(6, W2, rng, linear=True), random_map(6, W2, rng, linear=True)
    phi = RealSeries3({(1, 1, 0): 1, (2, 2, 0): 2, (2, 1, 1): 1, (1, 2, 1): 1}, 6, W2)
    assert transform_series(transform_series(phi, A), B) == transform_series(phi, A.then(B))
    C = random_map(6, W2, rng)
    assert A.then(B).then(C) == A.then(B.then(C))


def test_identity_and_linear_part():
    T = linear_map(GaussianRational(2, 1), 5, 6, W2)
    assert T.linear_part() == (GaussianRational(2, 1), 5)
    assert FormalMap.identity(6, W2).is_identity()
    assert T.then(FormalMap.identity(6, W2)) == T
