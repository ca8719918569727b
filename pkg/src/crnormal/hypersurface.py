"""Pointwise invariants of a germ: Levi form, type, model, essential type."""

from dataclasses import dataclass, field
from enum import Enum
from math import comb, gcd

from gmpy2 import mpq

from .coeffs import GaussianRational, as_gaussian
from .exceptions import IllFormedSurface, RealityViolation, TruncationTooLow
from .maps import FormalMap
from .series import RealSeries3, HoloSeries2, Weighting
from .transform import transform_series

__all__ = [
    "Germ",
    "ModelPoly",
    "ModelClass",
    "LinearSymmetry",
    "SymmetryGroup",
    "InfiniteTypeWithinTruncation",
    "HarmonicRemoval",
    "levi_sign",
    "remove_harmonics",
    "essential_type",
    "classify_model",
    "model_symmetries",
]


@dataclass(frozen=True)
class Germ:
    """A hypersurface germ ``v = phi(z, zbar, u)`` centred at the origin."""

    phi: RealSeries3
    source_trunc: int = None

    def __post_init__(self):
        if self.source_trunc is None:
            object.__setattr__(self, "source_trunc", self.phi.trunc)
        co = self.phi.coeffs
        for key in ((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)):
            if key in co:
                raise IllFormedSurface(
                    f"coordinates must be centred with tangent plane v = 0; found term {key}"
                )
        if not self.phi.is_hermitian():
            raise RealityViolation("defining series is not hermitian-real")

    @property
    def weighting(self):
        return self.phi.weighting

    @property
    def trunc(self):
        return self.phi.trunc

    @classmethod
    def from_terms(cls, terms, trunc, u_weight=2):
        return cls(RealSeries3(terms, trunc, Weighting(u_weight)))

    def reweight(self, weighting):
        return Germ(self.phi.reweight(weighting))

    def __repr__(self):
        return f"Germ({self.phi!r})"


class ModelClass(str, Enum):
    CIRCULAR = "Circular"
    TUBULAR = "Tubular"
    GENERIC = "Generic"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class ModelPoly:
    """Homogeneous model ``P = sum_{j=1}^{k-1} a_j z^j zbar^(k-j)``."""

    k: int
    a: dict

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("model degree must be at least 2")
        a = {}
        for j, c in dict(self.a).items():
            j = int(j)
            c = as_gaussian(c)
            if not 1 <= j <= self.k - 1:
                if c:
                    raise ValueError(f"model index {j} outside 1..{self.k - 1}")
                continue
            if c:
                a[j] = c
        if not a:
            raise ValueError("model polynomial must be nonzero")
        for j, c in a.items():
            if a.get(self.k - j) != c.conjugate():
                raise RealityViolation("model coefficients must satisfy a_j = conj(a_{k-j})")
        object.__setattr__(self, "a", a)

    def coeff(self, j):
        return self.a.get(j, GaussianRational(0))

    @property
    def l(self):
        return essential_type(self)

    @property
    def klass(self):
        return classify_model(self)

    def as_series(self, trunc, weighting=None):
        weighting = weighting or Weighting(self.k)
        return RealSeries3({(j, self.k - j, 0): c for j, c in self.a.items()}, trunc, weighting)

    @classmethod
    def from_series(cls, phi, k):
        return cls(k, {i: c for (i, j, m), c in phi.items() if m == 0 and i + j == k and i and j})

    def __hash__(self):
        return hash((self.k, frozenset(self.a.items())))

    def __str__(self):
        parts = [f"{c}*z^{j}*zbar^{self.k - j}" for j, c in sorted(self.a.items())]
        return " + ".join(parts)


class InfiniteTypeWithinTruncation(Exception):
    """Verdict: no finite type up to the requested order was detected.

    Raised as an exception so that callers who expect a finite type do not
    silently continue; it is a verdict, not a failure.
    """

    def __init__(self, max_k):
        self.max_k = max_k
        super().__init__(f"no finite type <= {max_k} detected within the truncation")


@dataclass(frozen=True)
class HarmonicRemoval:
    k: int
    model: ModelPoly
    germ: Germ
    map: FormalMap


def levi_sign(germ):
    """Return ``(sign, value)`` of the Levi scalar, the coefficient of ``z zbar``."""
    value = germ.phi.coeff(1, 1, 0).re
    sign = (value > 0) - (value < 0)
    return sign, value


def _u_zero_after(phi, alphas, degree):
    """``Phi(z, zbar, -Re g) + Im g`` at u = 0 up to ``degree``, ``g = sum alpha_i z^i``."""
    wt = phi.weighting
    n = min(phi.trunc, degree)
    s = RealSeries3(
        {**{(i, 0, 0): -c * mpq(1, 2) for i, c in alphas.items()},
         **{(0, i, 0): -c.conjugate() * mpq(1, 2) for i, c in alphas.items()}},
        n,
        wt,
    )
    im = RealSeries3(
        {**{(i, 0, 0): c * GaussianRational(0, mpq(-1, 2)) for i, c in alphas.items()},
         **{(0, i, 0): c.conjugate() * GaussianRational(0, mpq(1, 2)) for i, c in alphas.items()}},
        n,
        wt,
    )
    by_m = {}
    for (i, j, m), c in phi.truncate(n).items():
        by_m.setdefault(m, {})[(i, j, 0)] = c
    out = im
    spow = RealSeries3.one(n, wt)
    for m in range(max(by_m, default=0) + 1):
        if m:
            spow = spow * s
        if m in by_m:
            out = out + RealSeries3(by_m[m], n, wt) * spow
    return out


def _harmonic_scan(phi, max_k):
    """Find alphas and the type in the grading of ``phi``.

    Returns ``(k, alphas)`` or ``(None, alphas)``; raises ``_NeedsFinerGrading``
    when a harmonic of degree below the weight of ``u`` has to be removed.
    """
    W = phi.weighting.u_weight
    alphas = {}
    for d in range(2, max_k + 1):
        cur = _u_zero_after(phi, alphas, d).weight_part(d)
        nonharm = {key: c for key, c in cur.items() if key[0] and key[1]}
        c_d = cur.coeffs.get((d, 0, 0))
        if c_d:
            if d < W:
                raise _NeedsFinerGrading
            alphas[d] = c_d * GaussianRational(0, -2)
        if nonharm:
            return d, alphas
    return None, alphas


class _NeedsFinerGrading(Exception):
    pass


def remove_harmonics(germ, max_k=None):
    """Remove the harmonic terms up to the type and extract the model.

    Returns a :class:`HarmonicRemoval` whose germ is graded with ``u``-weight
    ``k``.  The harmonic map ``w* = w + sum alpha_i z^i`` is returned in the
    grading it was computed in.  Raises :class:`InfiniteTypeWithinTruncation`
    when no non-harmonic term of degree ``<= max_k`` exists at ``u = 0``.
    """
    phi = germ.phi
    if max_k is None:
        max_k = phi.trunc
    if max_k > germ.source_trunc or max_k > phi.trunc:
        raise TruncationTooLow(f"max_k={max_k} exceeds the germ truncation {phi.trunc}")
    try:
        k, alphas = _harmonic_scan(phi, max_k)
    except _NeedsFinerGrading:
        phi = phi.reweight(Weighting(2))
        if max_k > phi.trunc:
            raise TruncationTooLow(
                f"removing low-degree harmonics needs u-weight 2; the germ is then trusted "
                f"only to degree {phi.trunc} < {max_k}"
            )
        k, alphas = _harmonic_scan(phi, max_k)
    if k is None:
        raise InfiniteTypeWithinTruncation(max_k)
    wt = phi.weighting
    T = FormalMap(HoloSeries2.zero(phi.trunc, wt), HoloSeries2({(i, 0): c for i, c in alphas.items()}, phi.trunc, wt))
    new_phi = transform_series(phi, T) if alphas else phi
    if new_phi.weighting.u_weight != k:
        new_phi = new_phi.reweight(Weighting(k))
    model = ModelPoly.from_series(new_phi, k)
    return HarmonicRemoval(k, model, Germ(new_phi), T)


def essential_type(model):
    """Lowest index ``j`` with ``a_j != 0``."""
    return min(model.a)


def _is_tubular(model):
    k, a = model.k, model.a
    if len(a) != k - 1:
        return False
    b = [a[j] * mpq(1, comb(k, j)) for j in range(1, k)]
    if len(b) < 2:
        return False
    ratio = b[1] / b[0]
    if ratio.abs2() != 1:
        return False
    return all(b[j + 1] == b[j] * ratio for j in range(len(b) - 1))


def classify_model(model):
    if set(model.a) == {model.k // 2} and model.k % 2 == 0:
        return ModelClass.CIRCULAR
    if _is_tubular(model):
        return ModelClass.TUBULAR
    return ModelClass.GENERIC


@dataclass(frozen=True)
class LinearSymmetry:
    """``z* = beta*z, w* = delta*w``."""

    beta: GaussianRational
    delta: object

    def __post_init__(self):
        object.__setattr__(self, "beta", as_gaussian(self.beta))
        object.__setattr__(self, "delta", mpq(self.delta))
        if not self.beta or not self.delta:
            raise ValueError("beta and delta must be nonzero")

    def preserves(self, model):
        b, bc = self.beta, self.beta.conjugate()
        return all(
            c * b ** j * bc ** (model.k - j) == c * self.delta for j, c in model.a.items()
        )

    def to_map(self, order, weighting):
        from .maps import linear_map

        return linear_map(self.beta, self.delta, order, weighting)


_UNIT_ROOTS = {1: GaussianRational(1), 2: GaussianRational(-1), 4: GaussianRational(0, 1)}


@dataclass(frozen=True)
class SymmetryGroup:
    """Linear symmetries ``z* = beta z, w* = delta w`` of a model.

    ``dimension`` is the real dimension; ``finite_order`` the order ``m`` of
    the cyclic group of rotations (with ``rotation_delta`` the value of
    ``delta`` paired with the generating rotation ``beta = e^{2 pi i/m}``
    or ``e^{i pi/D}``).  ``generators`` holds exact textual constraints.
    """

    dimension: int
    finite_order: int
    rotation_angle: tuple  # (p, q): generator angle is p*pi/q
    rotation_delta: int
    generators: tuple = field(default_factory=tuple)

    @property
    def rotation(self):
        """The generating rotation as an exact Gaussian rational, if it is one."""
        p, q = self.rotation_angle
        turns = mpq(p, 2 * q)  # angle / 2pi
        for n, root in _UNIT_ROOTS.items():
            if (turns * n).denominator == 1:
                return root ** int(turns * n)
        return None


def _rotation_group(pairs):
    """Rotations preserving a support up to the sign rule.

    ``pairs`` lists ``(d, s)``: a coefficient picks up ``e^{i theta d}`` and
    must equal ``eps^s`` with ``eps`` in {+1, -1}.  Returns
    ``(order, (p, q), eps)`` with generator angle ``p*pi/q``, or ``None`` for
    a continuous group.
    """
    D = 0
    for d, _ in pairs:
        D = gcd(D, abs(d))
    if D == 0:
        return None
    if all(((d // D) - s) % 2 == 0 for d, s in pairs):
        return 2 * D, (1, D), -1
    return D, (2, D), 1


def model_symmetries(model):
    k = model.k
    if classify_model(model) is ModelClass.CIRCULAR:
        return SymmetryGroup(
            dimension=2,
            finite_order=1,
            rotation_angle=(0, 1),
            rotation_delta=1,
            generators=(
                "z* = e^{i theta} z, w* = w  (theta real)",
                f"z* = r z, w* = r^{k} w  (r > 0)",
            ),
        )
    order, angle, eps = _rotation_group([(2 * j - k, 1) for j in model.a])
    p, q = angle
    gens = [f"z* = r z, w* = r^{k} w  (r > 0)"]
    if order > 1:
        gens.append(
            f"z* = beta z, w* = {eps:+d} w  with beta^{order} = 1 primitive "
            f"(beta = e^(i*{p}*pi/{q}))"
        )
    return SymmetryGroup(
        dimension=1,
        finite_order=order,
        rotation_angle=angle,
        rotation_delta=eps,
        generators=tuple(gens),
    )
