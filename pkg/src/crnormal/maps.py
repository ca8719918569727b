"""Formal holomorphic maps ``z* = z + f(z, w), w* = w + g(z, w)``."""

from dataclasses import dataclass

from gmpy2 import mpq

from .coeffs import GaussianRational, as_gaussian, Q
from .exceptions import NonInvertibleLinearPart, WeightMismatch
from .series import HoloSeries2, Weighting

__all__ = [
    "FormalMap",
    "SphereAutomorphism",
    "CircularAutomorphism",
    "linear_map",
    "sphere_map",
    "circular_map",
    "substitute",
]


def substitute(h, zs, ws):
    """``h(zs, ws)`` for holomorphic series ``zs``, ``ws`` without constant terms."""
    trunc = min(h.trunc, zs.trunc, ws.trunc)
    weighting = h.weighting
    one = HoloSeries2.one(trunc, weighting)
    zp, wp = [one], [one]
    out = HoloSeries2.zero(trunc, weighting)
    for (a, b), c in sorted(h.items()):
        while len(zp) <= a:
            zp.append(zp[-1] * zs)
        while len(wp) <= b:
            wp.append(wp[-1] * ws)
        out = out + (zp[a] * wp[b]).scale(c)
    return out


@dataclass(frozen=True, eq=False)
class FormalMap:
    """A formal change of coordinates, exact up to weighted degree ``order``.

    ``f`` and ``g`` are stored with truncation ``order``.  Only the part of
    ``f`` of weighted degree ``<= order - k + 1`` influences a transformed
    defining equation of model degree ``k`` up to ``order``; the remaining
    terms of ``f`` are kept because compositions produce them.
    """

    f: HoloSeries2
    g: HoloSeries2

    def __post_init__(self):
        if self.f.weighting != self.g.weighting:
            raise WeightMismatch("f and g use different weightings")
        fc, gc = self.f.coeffs, self.g.coeffs
        if (0, 0) in fc or (0, 0) in gc:
            raise NonInvertibleLinearPart("the map must fix the origin")
        W = self.weighting.u_weight
        for (a, b), c in gc.items():
            if b == 0 and a < W:
                raise NonInvertibleLinearPart(
                    f"w* has a term z^{a} of weight below the weight of w"
                )
        g01 = gc.get((0, 1), GaussianRational(0))
        if not g01.is_real():
            raise NonInvertibleLinearPart("the coefficient of w in w* must be real")
        if not (1 + fc.get((1, 0), GaussianRational(0))):
            raise NonInvertibleLinearPart("z* has no z term")
        if not (1 + g01):
            raise NonInvertibleLinearPart("w* has no w term")

    @property
    def weighting(self):
        return self.f.weighting

    @property
    def order(self):
        return min(self.f.trunc, self.g.trunc)

    @classmethod
    def identity(cls, order, weighting=None):
        weighting = weighting or Weighting()
        return cls(HoloSeries2.zero(order, weighting), HoloSeries2.zero(order, weighting))

    @classmethod
    def from_coeffs(cls, f, g, order, weighting=None):
        weighting = weighting or Weighting()
        return cls(HoloSeries2(f, order, weighting), HoloSeries2(g, order, weighting))

    def is_identity(self):
        return self.f.is_zero() and self.g.is_zero()

    def linear_part(self):
        """``(lam, delta)`` with ``z* = lam*z + ...`` and ``w* = delta*w + ...``."""
        lam = 1 + self.f.coeffs.get((1, 0), GaussianRational(0))
        delta = 1 + self.g.coeffs.get((0, 1), GaussianRational(0))
        return lam, delta.re

    def components(self):
        """Full components ``(z + f, w + g)``."""
        n, wt = self.order, self.weighting
        return self.f + HoloSeries2.z(n, wt), self.g + HoloSeries2.w(n, wt)

    def then(self, other):
        """The composite ``other o self`` (apply ``self`` first)."""
        if other.weighting != self.weighting:
            raise WeightMismatch("maps use different weightings")
        zs, ws = self.components()
        n = min(self.order, other.order)
        zs, ws = zs.truncate(n), ws.truncate(n)
        f = zs + substitute(other.f.truncate(n), zs, ws) - HoloSeries2.z(n, self.weighting)
        g = ws + substitute(other.g.truncate(n), zs, ws) - HoloSeries2.w(n, self.weighting)
        return FormalMap(f, g)

    def truncate(self, order):
        return FormalMap(self.f.truncate(order), self.g.truncate(order))

    def with_order(self, order):
        """Declare the polynomial map exact up to ``order`` (pads with zeros)."""
        return FormalMap(self.f.with_trunc(order), self.g.with_trunc(order))

    def reweight(self, weighting, order=None):
        """Re-grade a polynomial map; the coefficients are kept verbatim.

        The map is treated as exact, so ``order`` may exceed the current one.
        """
        order = self.order if order is None else order
        f = {key: c for key, c in self.f.items() if weighting.degree(key) <= order}
        g = {key: c for key, c in self.g.items() if weighting.degree(key) <= order}
        return FormalMap(HoloSeries2(f, order, weighting), HoloSeries2(g, order, weighting))

    def __eq__(self, other):
        if not isinstance(other, FormalMap):
            return NotImplemented
        return self.f == other.f and self.g == other.g

    def __hash__(self):
        return hash((self.f, self.g))

    def __repr__(self):
        return f"FormalMap(f={self.f!r}, g={self.g!r})"


def linear_map(lam, delta, order, weighting=None):
    """``z* = lam*z, w* = delta*w``."""
    lam, delta = as_gaussian(lam), Q(delta)
    return FormalMap.from_coeffs({(1, 0): lam - 1}, {(0, 1): delta - 1}, order, weighting)


def _geometric_inverse(d, order, weighting):
    """``1/(1 - d)`` for a holomorphic series ``d`` without constant term."""
    one = HoloSeries2.one(order, weighting)
    out, term = one, one
    val = d.valuation()
    if val is None:
        return one
    for _ in range(order // max(val, 1)):
        term = term * d
        out = out + term
    return out


def _binomial_series(x, alpha, order, weighting):
    """``(1 + x)^alpha`` for rational ``alpha`` and ``x`` without constant term."""
    alpha = Q(alpha)
    one = HoloSeries2.one(order, weighting)
    out, term, coef = one, one, mpq(1)
    val = x.valuation()
    if val is None:
        return one
    for n in range(1, order // max(val, 1) + 1):
        coef = coef * (alpha - n + 1) / n
        term = term * x
        out = out + term.scale(coef)
    return out


@dataclass(frozen=True)
class SphereAutomorphism:
    """An element of the five-parameter isotropy group of ``v = |z|^2``.

    ``phase`` is the exact unit ``e^{i theta}``; ``delta`` is a nonzero
    rational, ``a`` a Gaussian rational and ``mu`` a rational.
    """

    a: GaussianRational = GaussianRational(0)
    delta: object = 1
    phase: GaussianRational = GaussianRational(1)
    mu: object = 0

    def __post_init__(self):
        object.__setattr__(self, "a", as_gaussian(self.a))
        object.__setattr__(self, "phase", as_gaussian(self.phase))
        object.__setattr__(self, "delta", Q(self.delta))
        object.__setattr__(self, "mu", Q(self.mu))
        if self.delta == 0:
            raise ValueError("delta must be nonzero")
        if self.phase.abs2() != 1:
            raise ValueError("phase must have modulus one")

    @property
    def lam(self):
        return self.phase * self.delta

    def to_map(self, order, weighting=None):
        return sphere_map(self.lam, self.a, self.mu, order, weighting)


def sphere_map(lam, a, mu, order, weighting=None):
    """``z* = lam (z + a w)/D, w* = |lam|^2 w/D`` with ``D = 1 - 2i conj(a) z - (mu + i|a|^2) w``.

    Parameterized by ``lam`` so that ``|lam|`` need not be rational.
    """
    weighting = weighting or Weighting(2)
    if weighting.u_weight != 2:
        raise WeightMismatch("sphere automorphisms act in the grading with u-weight 2")
    lam, a, mu = as_gaussian(lam), as_gaussian(a), Q(mu)
    if not lam:
        raise NonInvertibleLinearPart("lam must be nonzero")
    z, w = HoloSeries2.z(order, weighting), HoloSeries2.w(order, weighting)
    # 1 - D = 2i conj(a) z + (mu + i|a|^2) w
    d = z.scale(GaussianRational(0, 2) * a.conjugate()) + w.scale(GaussianRational(mu, a.abs2()))
    inv = _geometric_inverse(d, order, weighting)
    zs = ((z + w.scale(a)) * inv).scale(lam)
    ws = (w * inv).scale(lam.abs2())
    return FormalMap(zs - z, ws - w)


@dataclass(frozen=True)
class CircularAutomorphism:
    """An element of the three-parameter isotropy group of ``v = |z|^(2l)``."""

    l: int
    delta: object = 1
    phase: GaussianRational = GaussianRational(1)
    mu: object = 0

    def __post_init__(self):
        object.__setattr__(self, "phase", as_gaussian(self.phase))
        object.__setattr__(self, "delta", Q(self.delta))
        object.__setattr__(self, "mu", Q(self.mu))
        if self.delta <= 0:
            raise ValueError("delta must be positive")
        if self.phase.abs2() != 1:
            raise ValueError("phase must have modulus one")
        if self.l < 1:
            raise ValueError("l must be positive")

    @property
    def k(self):
        return 2 * self.l

    @property
    def lam(self):
        return self.phase * self.delta

    def to_map(self, order, weighting=None):
        return circular_map(self.l, self.lam, self.mu, order, weighting)


def circular_map(l, lam, mu, order, weighting=None):
    """``z* = lam z (1 + mu w)^(-1/l), w* = |lam|^(2l) w/(1 + mu w)``."""
    k = 2 * l
    weighting = weighting or Weighting(k)
    if weighting.u_weight != k:
        raise WeightMismatch(f"circular automorphisms act in the grading with u-weight {k}")
    lam, mu = as_gaussian(lam), Q(mu)
    if not lam:
        raise NonInvertibleLinearPart("lam must be nonzero")
    z, w = HoloSeries2.z(order, weighting), HoloSeries2.w(order, weighting)
    muw = w.scale(mu)
    zs = (z * _binomial_series(muw, mpq(-1, l), order, weighting)).scale(lam)
    ws = (w * _binomial_series(muw, -1, order, weighting)).scale(lam.abs2() ** l)
    return FormalMap(zs - z, ws - w)
