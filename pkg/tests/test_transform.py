import random

import pytest

from crnormal.coeffs import GaussianRational
from crnormal.hypersurface import ModelClass
from crnormal.maps import FormalMap, SphereAutomorphism
from crnormal.samples import random_germ, random_map, random_model
from crnormal.series import HoloSeries2, RealSeries3, Weighting
from crnormal.transform import cm_operator, gcm_operator, transform_series

from oracles import sympy_transform

W2 = Weighting(2)
I = GaussianRational(0, 1)


def H(terms, n, wt=W2):
    return HoloSeries2(terms, n, wt)


def test_identity_map():
    phi = RealSeries3({(1, 1, 0): 1, (2, 2, 1): 3}, 8, W2)
    assert transform_series(phi, FormalMap.identity(8, W2)) == phi


def test_quarter_turn_preserves_sphere():
    phi = RealSeries3({(1, 1, 0): 1}, 8, W2)
    T = SphereAutomorphism(phase=I).to_map(8, W2)
    assert transform_series(phi, T) == phi


def test_quadratic_w_perturbation_creates_harmonic():
    # w* = w + i z^2: v* = |z|^2 + Re z^2 exactly to degree 4
    phi = RealSeries3({(1, 1, 0): 1}, 4, W2)
    T = FormalMap(H({}, 4), H({(2, 0): I}, 4))
    out = transform_series(phi, T)
    half = GaussianRational("1/2")
    assert out.truncate(2) == RealSeries3({(1, 1, 0): 1, (2, 0, 0): half, (0, 2, 0): half}, 2, W2)
    assert out == sympy_transform(phi, T)


@pytest.mark.parametrize("W,seed", [(2, 0), (2, 1), (3, 2), (3, 3)])
def test_against_sympy_oracle(W, seed):
    rng = random.Random(seed)
    wt = Weighting(W)
    if W == 2:
        phi = random_germ(random_model(2, ModelClass.CIRCULAR, rng), 5, rng).phi
    else:
        phi = random_germ(random_model(3, ModelClass.TUBULAR, rng), 5, rng).phi
    T = random_map(5, wt, rng, linear=True)
    assert transform_series(phi, T) == sympy_transform(phi, T)


def test_cm_operator_kernel():
    n = 8
    zero = H({}, n)
    assert cm_operator(zero, H({(0, 0): 5}, n)).is_zero()
    assert cm_operator(H({(1, 0): I}, n), zero).is_zero()
    assert cm_operator(H({(1, 0): 1}, n), H({(0, 1): 2}, n)).is_zero()
    # a nonzero example: g = w gives -|z|^2
    assert cm_operator(zero, H({(0, 1): 1}, n)) == RealSeries3({(1, 1, 0): -1}, n, W2)


@pytest.mark.parametrize("k", [3, 4, 5, 6])
def test_gcm_operator_kernel(k):
    rng = random.Random(k)
    wt = Weighting(k)
    n = 3 * k
    classes = [ModelClass.TUBULAR] + ([ModelClass.GENERIC] if k > 3 else [])
    classes += [ModelClass.CIRCULAR] if k % 2 == 0 else []
    for _ in range(6):
        P = random_model(k, rng.choice(classes), rng)
        assert gcm_operator(H({(1, 0): 1}, n, wt), H({(0, 1): k}, n, wt), P).is_zero()
        assert gcm_operator(H({}, n, wt), H({(0, 0): 3}, n, wt), P).is_zero()
        assert gcm_operator(H({}, n, wt), H({(0, 1): 1}, n, wt), P) == -P.as_series(n, wt)
