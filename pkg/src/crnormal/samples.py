"""Random germs, models and maps with small Gaussian-integer coefficients."""

import random
from math import comb

from .coeffs import GaussianRational
from .hypersurface import Germ, ModelPoly, ModelClass, classify_model
from .maps import FormalMap
from .series import RealSeries3, HoloSeries2, Weighting

__all__ = [
    "random_coeff",
    "random_germ",
    "random_model",
    "random_map",
]


def random_coeff(rng, bound=3, real=False):
    while True:
        c = GaussianRational(rng.randint(-bound, bound), 0 if real else rng.randint(-bound, bound))
        if c:
            return c


def random_germ(model, order, rng=None, density=0.5, harmonics=True, bound=3):
    """``v = P + (higher terms)`` graded with ``u``-weight ``model.k``.

    Harmonic terms of degree at least ``k`` are included when ``harmonics``
    is set; they do not change the type.
    """
    rng = rng or random.Random()
    k = model.k
    wt = Weighting(k)
    terms = {(j, k - j, 0): c for j, c in model.a.items()}
    for m in range(order // k + 1):
        for i in range(order + 1):
            for j in range(i, order + 1 - i):
                d = i + j + k * m
                if d > order or (i, j, m) in terms:
                    continue
                if d <= k and not (harmonics and j == 0 and m == 0 and d == k):
                    continue
                if j == 0 and m == 0 and not harmonics:
                    continue
                if (i, j, m) == (0, 0, 1) or rng.random() > density:
                    continue
                c = random_coeff(rng, bound, real=(i == j))
                terms[(i, j, m)] = c
                terms[(j, i, m)] = c.conjugate()
    return Germ(RealSeries3(terms, order, wt))


def random_model(k, klass, rng=None, bound=3):
    """A random model of degree ``k`` of the requested class."""
    rng = rng or random.Random()
    klass = ModelClass(klass)
    if klass is ModelClass.CIRCULAR:
        if k % 2:
            raise ValueError("circular models have even degree")
        return ModelPoly(k, {k // 2: random_coeff(rng, bound, real=True)})
    if klass is ModelClass.TUBULAR:
        # c * ((z + zbar)^k minus its harmonic part)
        c = rng.randint(1, bound)
        return ModelPoly(k, {j: GaussianRational(c * comb(k, j)) for j in range(1, k)})
    if k < 4:
        raise ValueError("every real model of degree < 4 is circular or tubular")
    while True:
        a = {}
        for j in range(1, (k + 1) // 2):
            if rng.random() < 0.5:
                a[j] = random_coeff(rng, bound)
        if k % 2 == 0 and rng.random() < 0.5:
            a[k // 2] = random_coeff(rng, bound, real=True)
        full = dict(a)
        for j, c in a.items():
            full[k - j] = c.conjugate()
        if not full:
            continue
        m = ModelPoly(k, full)
        if classify_model(m) is ModelClass.GENERIC:
            return m


def random_map(order, weighting, rng=None, density=0.4, bound=2, linear=False):
    """A random invertible formal map; identity linear part unless ``linear``."""
    rng = rng or random.Random()
    W = weighting.u_weight
    f, g = {}, {}
    for b in range(order // W + 1):
        for a in range(order + 1 - b * W):
            d = a + b * W
            if d == 0:
                continue
            if (a, b) != (1, 0) and rng.random() < density:
                f[(a, b)] = random_coeff(rng, bound)
            if b == 0 and a < W:
                continue
            if (a, b) == (0, 1):
                continue
            if rng.random() < density:
                g[(a, b)] = random_coeff(rng, bound)
    if linear:
        f[(1, 0)] = GaussianRational(rng.randint(1, 2), rng.randint(-1, 1)) - 1
        g[(0, 1)] = GaussianRational(rng.choice([1, 2, -1])) - 1
        f = {key: c for key, c in f.items() if c}
        g = {key: c for key, c in g.items() if c}
    return FormalMap.from_coeffs(f, g, order, weighting)
