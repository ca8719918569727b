"""Truncated formal power series with exact Gaussian-rational coefficients.

Two series types are provided:

* :class:`RealSeries3` -- series in the real variables ``(z, zbar, u)``.  A
  defining equation ``v = Phi(z, zbar, u)`` is one of these; intermediate
  results (for instance ``u + i*Phi``) are allowed to be non-hermitian.
* :class:`HoloSeries2` -- holomorphic series in ``(z, w)``; the components
  of a formal map.

Both are graded by a :class:`Weighting`: ``z`` and ``zbar`` carry weight one,
``u`` (respectively ``w``) carries weight ``u_weight``.  ``trunc`` is the
largest weighted degree whose coefficients are trusted; absent keys of
weighted degree at most ``trunc`` are exactly zero.
"""

from collections import defaultdict
from dataclasses import dataclass

from gmpy2 import mpq

from .coeffs import GaussianRational, as_gaussian, ONE
from .exceptions import (
    WeightMismatch,
    IllFormedSurface,
    NonInvertibleLinearPart,
    RealityViolation,
)

__all__ = [
    "Weighting",
    "RealSeries3",
    "HoloSeries2",
    "add",
    "mul",
    "compose_on_surface",
    "implicit_solve",
    "slice_series",
]

_ZERO_Q = mpq(0)
_G = GaussianRational._raw


@dataclass(frozen=True)
class Weighting:
    u_weight: int = 2

    def __post_init__(self):
        if not isinstance(self.u_weight, int) or self.u_weight < 2:
            raise ValueError(f"u_weight must be an integer >= 2, got {self.u_weight!r}")

    def degree(self, key):
        if len(key) == 3:
            i, j, m = key
            return i + j + self.u_weight * m
        i, j = key
        return i + self.u_weight * j


def _check_same(a, b):
    if a.weighting != b.weighting:
        raise WeightMismatch(f"weightings differ: {a.weighting} vs {b.weighting}")


def _accumulate(re, im, keys_seen=None):
    out = {}
    for key, r in re.items():
        s = im.get(key, _ZERO_Q)
        if r or s:
            out[key] = _G(r, s)
    for key, s in im.items():
        if key not in re and s:
            out[key] = _G(_ZERO_Q, s)
    return out


class _Series:
    """Shared machinery; subclasses fix the key arity."""

    __slots__ = ("_coeffs", "trunc", "weighting")

    def __init__(self, coeffs=None, trunc=0, weighting=None):
        weighting = weighting or Weighting()
        if not isinstance(weighting, Weighting):
            raise TypeError("weighting must be a Weighting")
        data = {}
        if coeffs:
            deg = weighting.degree
            for key, c in coeffs.items():
                key = tuple(int(k) for k in key)
                if len(key) != self._arity or min(key) < 0:
                    raise ValueError(f"bad exponent key {key!r}")
                if deg(key) > trunc:
                    continue
                c = as_gaussian(c)
                if c:
                    data[key] = c
        object.__setattr__(self, "_coeffs", data)
        object.__setattr__(self, "trunc", int(trunc))
        object.__setattr__(self, "weighting", weighting)

    @classmethod
    def _trusted(cls, data, trunc, weighting):
        # data already validated, nonzero and within trunc
        obj = object.__new__(cls)
        object.__setattr__(obj, "_coeffs", data)
        object.__setattr__(obj, "trunc", trunc)
        object.__setattr__(obj, "weighting", weighting)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    # container protocol --------------------------------------------------
    @property
    def coeffs(self):
        return dict(self._coeffs)

    def coeff(self, *key):
        if self.weighting.degree(key) > self.trunc:
            raise ValueError(f"coefficient {key} lies beyond the truncation {self.trunc}")
        return self._coeffs.get(tuple(key), GaussianRational._raw(_ZERO_Q, _ZERO_Q))

    def items(self):
        return self._coeffs.items()

    def keys(self):
        return self._coeffs.keys()

    def __len__(self):
        return len(self._coeffs)

    def __bool__(self):
        return bool(self._coeffs)

    def is_zero(self):
        return not self._coeffs

    def degree(self, key):
        return self.weighting.degree(key)

    def sorted_items(self):
        deg = self.weighting.degree
        return sorted(self._coeffs.items(), key=lambda kv: (deg(kv[0]),) + kv[0])

    def valuation(self):
        """Lowest weighted degree carrying a nonzero coefficient (None if zero)."""
        if not self._coeffs:
            return None
        deg = self.weighting.degree
        return min(deg(k) for k in self._coeffs)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return (
            self.trunc == other.trunc
            and self.weighting == other.weighting
            and self._coeffs == other._coeffs
        )

    def __hash__(self):
        return hash((type(self).__name__, self.trunc, self.weighting, frozenset(self._coeffs.items())))

    def agrees_with(self, other, order=None):
        """Coefficientwise equality up to weighted degree ``order``."""
        _check_same(self, other)
        order = min(self.trunc, other.trunc) if order is None else order
        return not (self - other).truncate(order)._coeffs

    # linear structure ----------------------------------------------------
    def truncate(self, trunc):
        if trunc >= self.trunc:
            trunc = self.trunc
        deg = self.weighting.degree
        data = {k: c for k, c in self._coeffs.items() if deg(k) <= trunc}
        return self._trusted(data, trunc, self.weighting)

    def weight_part(self, d):
        """Homogeneous component of weighted degree exactly ``d``."""
        deg = self.weighting.degree
        data = {k: c for k, c in self._coeffs.items() if deg(k) == d}
        return self._trusted(data, self.trunc, self.weighting)

    def __add__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        _check_same(self, other)
        trunc = min(self.trunc, other.trunc)
        deg = self.weighting.degree
        re, im = defaultdict(mpq), defaultdict(mpq)
        for src in (self._coeffs, other._coeffs):
            for k, c in src.items():
                if deg(k) <= trunc:
                    re[k] += c.re
                    im[k] += c.im
        return self._trusted(_accumulate(re, im), trunc, self.weighting)

    def __neg__(self):
        return self._trusted({k: -c for k, c in self._coeffs.items()}, self.trunc, self.weighting)

    def __sub__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self + (-other)

    def scale(self, c):
        c = as_gaussian(c)
        if not c:
            return self._trusted({}, self.trunc, self.weighting)
        return self._trusted({k: v * c for k, v in self._coeffs.items()}, self.trunc, self.weighting)

    def __mul__(self, other):
        if type(other) is type(self):
            return _series_mul(self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative powers are not defined")
        result = self.one(self.trunc, self.weighting)
        for _ in range(n):
            result = result * self
        return result

    def with_trunc(self, trunc):
        """Same coefficients, declared exact up to ``trunc``.

        Only valid for series known to be exact polynomials (for instance a
        formal map whose higher terms are chosen to be zero).
        """
        deg = self.weighting.degree
        data = {k: c for k, c in self._coeffs.items() if deg(k) <= trunc}
        return self._trusted(data, int(trunc), self.weighting)

    def __repr__(self):
        body = ", ".join(f"{k}: {c}" for k, c in self.sorted_items())
        return f"{type(self).__name__}({{{body}}}, trunc={self.trunc}, u_weight={self.weighting.u_weight})"


def _series_mul(a, b):
    _check_same(a, b)
    trunc = min(a.trunc, b.trunc)
    deg = a.weighting.degree
    bl = sorted(((deg(k), k, c.re, c.im) for k, c in b._coeffs.items()), key=lambda t: t[0])
    re, im = defaultdict(mpq), defaultdict(mpq)
    arity3 = a._arity == 3
    for ka, ca in a._coeffs.items():
        da = deg(ka)
        room = trunc - da
        if room < 0:
            continue
        ar, ai = ca.re, ca.im
        if arity3:
            i0, j0, m0 = ka
            for db, kb, br, bi in bl:
                if db > room:
                    break
                key = (i0 + kb[0], j0 + kb[1], m0 + kb[2])
                re[key] += ar * br - ai * bi
                im[key] += ar * bi + ai * br
        else:
            i0, j0 = ka
            for db, kb, br, bi in bl:
                if db > room:
                    break
                key = (i0 + kb[0], j0 + kb[1])
                re[key] += ar * br - ai * bi
                im[key] += ar * bi + ai * br
    return type(a)._trusted(_accumulate(re, im), trunc, a.weighting)


class RealSeries3(_Series):
    """Truncated series ``sum c[i,j,m] z^i zbar^j u^m``."""

    __slots__ = ()
    _arity = 3

    @classmethod
    def zero(cls, trunc, weighting=None):
        return cls({}, trunc, weighting)

    @classmethod
    def one(cls, trunc, weighting=None):
        return cls({(0, 0, 0): 1}, trunc, weighting)

    @classmethod
    def monomial(cls, i, j, m, trunc, weighting=None, c=1):
        return cls({(i, j, m): c}, trunc, weighting)

    @classmethod
    def z(cls, trunc, weighting=None):
        return cls.monomial(1, 0, 0, trunc, weighting)

    @classmethod
    def zbar(cls, trunc, weighting=None):
        return cls.monomial(0, 1, 0, trunc, weighting)

    @classmethod
    def u(cls, trunc, weighting=None):
        return cls.monomial(0, 0, 1, trunc, weighting)

    def conj(self):
        """Complex conjugate as a series: ``c[i,j,m] -> conj(c[j,i,m])``."""
        data = {(j, i, m): c.conjugate() for (i, j, m), c in self._coeffs.items()}
        return self._trusted(data, self.trunc, self.weighting)

    def is_hermitian(self):
        co = self._coeffs
        for (i, j, m), c in co.items():
            d = co.get((j, i, m))
            if d is None or d != c.conjugate():
                return False
        return True

    def real_part(self):
        return (self + self.conj()).scale(mpq(1, 2))

    def imag_part(self):
        return (self - self.conj()).scale(GaussianRational(0, mpq(-1, 2)))

    def require_hermitian(self, what="series"):
        if not self.is_hermitian():
            raise RealityViolation(f"{what} is not hermitian-real")
        return self

    def mul_monomial(self, i, j, m, c=ONE):
        deg = self.weighting.degree
        shift = deg((i, j, m))
        data = {}
        for (a, b, n), v in self._coeffs.items():
            key = (a + i, b + j, n + m)
            if deg(key) <= self.trunc:
                data[key] = v * c if c is not ONE else v
        return self._trusted(data, self.trunc, self.weighting)

    def substitute_u_zero(self):
        """The restriction ``Phi(z, zbar, 0)`` as a series with no ``u``."""
        data = {k: c for k, c in self._coeffs.items() if k[2] == 0}
        return self._trusted(data, self.trunc, self.weighting)

    def reweight(self, weighting):
        """Re-grade with another ``u`` weight, keeping only trusted coefficients.

        The new truncation is the largest ``N'`` such that every monomial of
        new weighted degree ``<= N'`` was trusted under the old grading.
        """
        if weighting == self.weighting:
            return self
        w_old, w_new = self.weighting.u_weight, weighting.u_weight
        if w_new >= w_old:
            new_trunc = self.trunc
        else:
            new_trunc = self.trunc
            while new_trunc >= 0:
                ok = all(
                    (new_trunc - w_new * m) + w_old * m <= self.trunc
                    for m in range(new_trunc // w_new + 1)
                )
                if ok:
                    break
                new_trunc -= 1
        deg = weighting.degree
        data = {k: c for k, c in self._coeffs.items() if deg(k) <= new_trunc}
        return RealSeries3._trusted(data, new_trunc, weighting)


class HoloSeries2(_Series):
    """Truncated holomorphic series ``sum c[i,j] z^i w^j``."""

    __slots__ = ()
    _arity = 2

    @classmethod
    def zero(cls, trunc, weighting=None):
        return cls({}, trunc, weighting)

    @classmethod
    def one(cls, trunc, weighting=None):
        return cls({(0, 0): 1}, trunc, weighting)

    @classmethod
    def z(cls, trunc, weighting=None):
        return cls({(1, 0): 1}, trunc, weighting)

    @classmethod
    def w(cls, trunc, weighting=None):
        return cls({(0, 1): 1}, trunc, weighting)


def add(a, b):
    """Exact sum truncated to ``min(a.trunc, b.trunc)``."""
    return a + b


def mul(a, b):
    """Exact Cauchy product truncated to ``min(a.trunc, b.trunc)``."""
    return a * b


def slice_series(phi, i, j):
    """The partial expansion coefficient ``F_ij(u)`` as ``{m: coeff}``.

    Coefficients are trusted for ``m * u_weight <= trunc - i - j``.
    """
    w = phi.weighting.u_weight
    top = (phi.trunc - i - j) // w if phi.trunc >= i + j else -1
    return {m: c for (a, b, m), c in phi.items() if a == i and b == j and m <= top}


def _check_surface(phi):
    co = phi._coeffs
    for key in ((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)):
        if key in co:
            raise IllFormedSurface(f"defining series has a constant or linear term {key}")


def surface_w(phi):
    """The series ``u + i*Phi`` (the value of ``w`` on the hypersurface)."""
    _check_surface(phi)
    return RealSeries3.u(phi.trunc, phi.weighting) + phi.scale(GaussianRational(0, 1))


def compose_on_surface(h, phi):
    """Evaluate ``h(z, u + i*Phi(z, zbar, u))`` as a series in ``(z, zbar, u)``."""
    if h.weighting != phi.weighting:
        raise WeightMismatch(f"weightings differ: {h.weighting} vs {phi.weighting}")
    trunc = min(h.trunc, phi.trunc)
    wser = surface_w(phi.truncate(trunc))
    by_power = defaultdict(list)
    for (a, b), c in h.items():
        by_power[b].append((a, c))
    out = RealSeries3.zero(trunc, phi.weighting)
    power = RealSeries3.one(trunc, phi.weighting)
    for b in range(max(by_power, default=-1) + 1):
        if b:
            power = power * wser
        for a, c in by_power.get(b, ()):
            out = out + power.mul_monomial(a, 0, 0, c)
    return out


def implicit_solve(inner, rhs, trunc=None):
    """Solve ``Phi*(Z, conj(Z), U) = rhs`` for ``Phi*`` order by order.

    ``inner`` is a pair ``(Z, U)`` of :class:`RealSeries3`: the substituted
    values of ``z*`` and ``u*``.  ``Z`` must read ``lam*z`` plus terms of
    weighted degree at least two, ``U`` must read ``delta*u + H(z, zbar)``
    in weighted degree ``u_weight`` plus higher terms, with ``lam != 0`` and
    ``delta`` real and nonzero.  Unknown coefficients are found in order of
    increasing weighted degree and, within one degree, decreasing power of
    ``u``; the substitution is triangular in that order.
    """
    Z, U = inner
    weighting = rhs.weighting
    for s in (Z, U):
        if s.weighting != weighting:
            raise WeightMismatch("inner map and right-hand side use different weightings")
    if trunc is None:
        trunc = min(rhs.trunc, Z.trunc, U.trunc)
    trunc = min(trunc, rhs.trunc, Z.trunc, U.trunc)
    W = weighting.u_weight
    deg = weighting.degree
    lam, delta = _inner_linear_part(Z, U, W)
    Zb = Z.conj()

    Z, Zb, U = Z.truncate(trunc), Zb.truncate(trunc), U.truncate(trunc)
    zpow, zbpow, upow, zzb = {0: RealSeries3.one(trunc, weighting)}, {0: RealSeries3.one(trunc, weighting)}, {0: RealSeries3.one(trunc, weighting)}, {}

    def power(cache, base, n):
        if n not in cache:
            cache[n] = power(cache, base, n - 1) * base
        return cache[n]

    def image(i, j, m):
        if (i, j) not in zzb:
            zzb[(i, j)] = power(zpow, Z, i) * power(zbpow, Zb, j)
        if m == 0:
            return zzb[(i, j)]
        return zzb[(i, j)] * power(upow, U, m)

    keys = [
        (i, d - i - W * m, m)
        for d in range(trunc + 1)
        for m in range(d // W, -1, -1)
        for i in range(d - W * m + 1)
    ]
    lam_c = lam.conjugate()
    re = defaultdict(mpq)
    im = defaultdict(mpq)
    for k, c in rhs.truncate(trunc).items():
        re[k] = c.re
        im[k] = c.im
    solution = {}
    for key in keys:
        r, s = re.get(key, _ZERO_Q), im.get(key, _ZERO_Q)
        if not (r or s):
            continue
        i, j, m = key
        lead = lam ** i * lam_c ** j * delta ** m
        c = _G(r, s) / lead
        solution[key] = c
        for k2, v in image(i, j, m).items():
            t = v * c
            re[k2] -= t.re
            im[k2] -= t.im
    return RealSeries3._trusted(solution, trunc, weighting)


def _inner_linear_part(Z, U, W):
    co = Z._coeffs
    if (0, 0, 0) in co or (0, 1, 0) in co:
        raise NonInvertibleLinearPart("z* has a constant or zbar term")
    lam = co.get((1, 0, 0))
    if lam is None or not lam:
        raise NonInvertibleLinearPart("z* has no z term")
    deg = U.weighting.degree
    for k, c in U.items():
        if deg(k) < W:
            raise NonInvertibleLinearPart(f"u* has a term {k} of weight below the weight of u")
    delta = U._coeffs.get((0, 0, 1))
    if delta is None or not delta or not delta.is_real():
        raise NonInvertibleLinearPart("u* must contain delta*u with real nonzero delta")
    return lam, delta
