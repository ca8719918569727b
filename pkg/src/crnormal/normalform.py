"""Degree-by-degree formal normal forms.

The defining equation is first brought to the form ``v = P + F`` with the
harmonic terms up to the type removed (and, in the Levi nondegenerate and
circular cases, the model scaled to ``|z|^k``).  For every weighted degree
``mu > k`` the weight-``mu`` part of the transformed equation depends on the
map coefficients of the same grade through ``Phi*_mu = Phi_mu - L(f, g)``,
``L`` being the (generalized) Chern-Moser operator.  The condition set of
the active case gives one exact linear system per grade.  Columns that the
model's symmetry algebra leaves undetermined are set to zero; they are the
pure-``w`` coefficients, which are ordered last.
"""

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

from gmpy2 import mpq

from .coeffs import GaussianRational, ONE, as_gaussian
from .exceptions import (
    LeviDegenerate,
    TruncationTooLow,
    WrongCase,
    TubularUnsupported,
    SingularSystem,
    DegreeMismatch,
    CaseMismatch,
    WeightMismatch,
)
from .hypersurface import (
    Germ,
    ModelPoly,
    ModelClass,
    LinearSymmetry,
    remove_harmonics,
    classify_model,
)
from .linalg import solve_exact
from .maps import FormalMap, SphereAutomorphism, CircularAutomorphism, linear_map
from .series import RealSeries3, HoloSeries2, Weighting
from .transform import transform_series, linear_operator, cm_operator, gcm_operator

__all__ = [
    "NormalFormCase",
    "ConditionCertificate",
    "NormalFormReport",
    "transform",
    "cm_operator",
    "gcm_operator",
    "scalar_product",
    "condition_functionals",
    "certify",
    "chern_moser_normalize",
    "generic_normalize",
    "circular_normalize",
    "tubular_normalize",
    "normalize",
    "apply_symmetry",
    "grade_system",
]

_I = GaussianRational(0, 1)
_MINUS_I = GaussianRational(0, -1)


class NormalFormCase(str, Enum):
    CHERN_MOSER = "ChernMoser"
    GENERIC = "Generic"
    CIRCULAR = "Circular"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class ConditionCertificate:
    id: str
    residuals: tuple  # ((label, value), ...)
    all_zero: bool


@dataclass(frozen=True)
class NormalFormReport:
    original: Germ
    normalized: Germ
    map: FormalMap
    conditions: tuple
    case: NormalFormCase
    order: int
    model: ModelPoly

    @property
    def k(self):
        return self.model.k

    @property
    def l(self):
        return self.model.l

    @property
    def certified(self):
        return all(c.all_zero for c in self.conditions)

    def normal_part(self):
        """``F* = Phi* - P`` up to ``order``."""
        phi = self.normalized.phi.truncate(self.order)
        return phi - self.model.as_series(phi.trunc, phi.weighting)


def transform(germ, T):
    """Image of ``germ`` under the formal map ``T``."""
    phi = germ.phi
    if phi.weighting != T.weighting:
        phi = phi.reweight(T.weighting)
    return Germ(transform_series(phi, T))


# ---------------------------------------------------------------------------
# scalar product and condition sets


def scalar_product(q, s, k=None):
    """``(Q, S) = sum_{j=1}^{k-2} q_j conj(s_j)``; harmonic entries are ignored.

    ``q`` and ``s`` map ``j`` to the coefficient of ``z^j zbar^(k-1-j)``.
    """
    q, s = dict(q), dict(s)
    if k is None:
        top = max(list(q) + list(s) + [0])
        k = top + 1
    for d in (q, s):
        for j in d:
            if not 0 <= j <= k - 1:
                raise DegreeMismatch(f"index {j} is outside 0..{k - 1}")
    total = GaussianRational(0)
    for j in range(1, k - 1):
        if j in q and j in s:
            total = total + as_gaussian(q[j]) * as_gaussian(s[j]).conjugate()
    return total


def _slot(key, real):
    if real:
        return [("re", [(key, ONE)])]
    return [("re", [(key, ONE)]), ("im", [(key, _MINUS_I)])]


def condition_functionals(case, model, mu):
    """Real linear functionals on the weight-``mu`` part of the normal form.

    Each entry is ``(family, label, terms)``; the functional evaluates to
    ``Re(sum(w * F[key] for key, w in terms))``.
    """
    k = model.k
    out = []

    def keys(pred):
        for m in range(mu // k + 1):
            s = mu - k * m
            for i in range(s + 1):
                j = s - i
                if pred(i, j):
                    yield i, j, m

    def add(family, key, real):
        for part, terms in _slot(key, real):
            out.append((family, f"{family}{key}.{part}", terms))

    if case is NormalFormCase.CHERN_MOSER:
        for key in keys(lambda i, j: j == 0):
            add("F_j0", key, key[0] == 0)
        for key in keys(lambda i, j: i == 1 and j >= 1):
            add("F_1j", key, key[1] == 1)
        for key in keys(lambda i, j: (i, j) == (2, 2)):
            add("F_22", key, True)
        for key in keys(lambda i, j: (i, j) == (3, 3)):
            add("F_33", key, True)
        for key in keys(lambda i, j: (i, j) == (3, 2)):
            add("F_32", key, False)
    elif case is NormalFormCase.CIRCULAR:
        l = model.l
        for key in keys(lambda i, j: j == 0):
            add("F_j0", key, key[0] == 0)
        for key in keys(lambda i, j: i == l and j >= l):
            add("F_l,l+j", key, key[1] == l)
        for key in keys(lambda i, j: (i, j) == (2 * l, 2 * l)):
            add("F_2l,2l", key, True)
        for key in keys(lambda i, j: (i, j) == (3 * l, 3 * l)):
            add("F_3l,3l", key, True)
        for key in keys(lambda i, j: (i, j) == (2 * l, 2 * l - 1)):
            add("F_2l,2l-1", key, False)
    elif case is NormalFormCase.GENERIC:
        l = model.l
        for key in keys(lambda i, j: j == 0 and i >= 1):
            add("F_j0", key, False)
        for key in keys(lambda i, j: j == l and i > k - l):
            add("F_k-l+j,l", key, False)
        for key in keys(lambda i, j: (i, j) == (k - l, l)):
            add("F_k-l,l", key, False)
        for key in keys(lambda i, j: (i, j) == (2 * k - 2 * l, 2 * l)):
            add("F_2k-2l,2l", key, False)
        if (mu - (k - 1)) % k == 0 and mu >= k - 1:
            m = (mu - (k - 1)) // k
            terms = [
                ((j, k - 1 - j, m), model.coeff(j + 1).conjugate() * (j + 1))
                for j in range(1, k - 1)
                if model.coeff(j + 1)
            ]
            out.append(("(F_k-1,P_z)", f"(F_k-1,P_z)[m={m}].re", terms))
            out.append(
                ("(F_k-1,P_z)", f"(F_k-1,P_z)[m={m}].im", [(key, w * _MINUS_I) for key, w in terms])
            )
    else:
        raise WrongCase(f"no condition set for {case}")
    return out


def _evaluate(terms, coeffs):
    total = mpq(0)
    for key, w in terms:
        c = coeffs.get(key)
        if c is not None:
            total += c.re * w.re - c.im * w.im
    return total


def certify(case, model, phi, order, start=None):
    """Evaluate every condition family on ``phi`` for weights up to ``order``."""
    k = model.k
    start = k + 1 if start is None else start
    families = {}
    co = phi.coeffs
    for mu in range(start, order + 1):
        for family, label, terms in condition_functionals(case, model, mu):
            families.setdefault(family, []).append((label, _evaluate(terms, co)))
    return tuple(
        ConditionCertificate(fam, tuple(res), all(v == 0 for _, v in res))
        for fam, res in families.items()
    )


# ---------------------------------------------------------------------------
# one grade


def grade_unknowns(k, mu):
    """Real unknowns of grade ``mu``: ``(component, (a, b), part)``.

    An ``f``-term ``z^a w^b`` has grade ``a + b k + k - 1`` and a ``g``-term
    grade ``a + b k``.  Pure-``w`` columns come last so that they are the
    ones left free by the elimination.
    """
    cols = []
    for comp, shift in (("f", k - 1), ("g", 0)):
        target = mu - shift
        for b in range(target // k + 1):
            a = target - b * k
            for part in ("re", "im"):
                cols.append((comp, (a, b), part))
    cols.sort(key=lambda c: (c[1][0] == 0, c[0], -c[1][0], c[2]))
    return cols


def _column_map(col, order, weighting):
    comp, key, part = col
    c = ONE if part == "re" else _I
    h = HoloSeries2({key: c}, order, weighting)
    zero = HoloSeries2.zero(order, weighting)
    return (h, zero) if comp == "f" else (zero, h)


@lru_cache(maxsize=256)
def _operator_columns(model, mu):
    k = model.k
    wt = Weighting(k)
    P = model.as_series(mu, wt)
    cols = grade_unknowns(k, mu)
    images = []
    for col in cols:
        f, g = _column_map(col, mu, wt)
        images.append(linear_operator(f, g, P).weight_part(mu).coeffs)
    return cols, images


def _expected_kernel(case, k, mu):
    if case is NormalFormCase.CHERN_MOSER:
        return {3: 2, 4: 1}.get(mu, 0)
    if case is NormalFormCase.CIRCULAR:
        return 1 if mu == 2 * k else 0
    return 0


@dataclass
class GradeSystem:
    mu: int
    columns: list
    labels: list
    matrix: list
    rhs: list
    solution: list
    rank: int
    free: list


def grade_system(case, model, phi, mu):
    """The linear system of grade ``mu`` for the current series ``phi``."""
    cols, images = _operator_columns(model, mu)
    funcs = condition_functionals(case, model, mu)
    A = [[_evaluate(terms, img) for img in images] for _, _, terms in funcs]
    cur = phi.weight_part(mu).coeffs
    b = [_evaluate(terms, cur) for _, _, terms in funcs]
    sol = solve_exact(A, b)
    expected = _expected_kernel(case, model.k, mu)
    defect = len(cols) - sol.rank
    if not sol.consistent or defect != expected:
        raise SingularSystem(
            f"weighted degree {mu}: rank {sol.rank} of {len(cols)} unknowns "
            f"(rank defect {defect}, expected {expected})"
            + ("" if sol.consistent else f"; inconsistent rows {sol.residual_rows}")
        )
    return GradeSystem(mu, cols, [lab for _, lab, _ in funcs], A, b, sol.x, sol.rank, sol.free)


def _map_from_solution(cols, x, order, weighting):
    f, g = {}, {}
    for (comp, key, part), v in zip(cols, x):
        if not v:
            continue
        target = f if comp == "f" else g
        c = target.get(key, GaussianRational(0))
        target[key] = c + (GaussianRational(v) if part == "re" else GaussianRational(0, v))
    return FormalMap.from_coeffs(f, g, order, weighting)


def _solve_grades(case, model, phi, order):
    """Normalize grades ``k+1 .. order`` of a prepared series ``phi``."""
    wt = phi.weighting
    total = FormalMap.identity(order, wt)
    cur = phi.truncate(order)
    for mu in range(model.k + 1, order + 1):
        system = grade_system(case, model, cur, mu)
        if not any(system.solution):
            continue
        T = _map_from_solution(system.columns, system.solution, order, wt)
        cur = transform_series(cur, T)
        total = total.then(T)
    return cur, total


# ---------------------------------------------------------------------------
# preparation and the public normalizers


@dataclass
class _Prepared:
    k: int
    model: ModelPoly
    phi: RealSeries3  # prepared series, u-weight k
    pre_map: FormalMap  # in the grading of source
    source: RealSeries3  # original series in the grading of pre_map


def _prepare(germ, max_k, scale_model):
    hr = remove_harmonics(germ, max_k)
    k, model, phi = hr.k, hr.model, hr.germ.phi
    pre = hr.map
    source = germ.phi if germ.phi.weighting == pre.weighting else germ.phi.reweight(pre.weighting)
    if scale_model:
        c = model.coeff(k // 2).re
        if c != 1:
            S = linear_map(1, 1 / c, phi.trunc, phi.weighting)
            phi = transform_series(phi, S)
            pre = pre.then(S.reweight(pre.weighting, pre.order))
            model = ModelPoly.from_series(phi, k)
    return _Prepared(k, model, phi, pre, source)


def _finish(germ, prep, case, order):
    if order > prep.phi.trunc:
        raise TruncationTooLow(
            f"order {order} exceeds the trusted weighted degree {prep.phi.trunc} "
            f"(u-weight {prep.k})"
        )
    if order < prep.k:
        raise TruncationTooLow(f"order {order} is below the type {prep.k}")
    cur, rest = _solve_grades(case, prep.model, prep.phi, order)
    wt = prep.pre_map.weighting
    total = prep.pre_map.then(rest.reweight(wt, prep.pre_map.order))
    normalized = Germ(cur)
    conditions = certify(case, prep.model, cur, order)
    return NormalFormReport(germ, normalized, total, conditions, case, order, prep.model)


def chern_moser_normalize(germ, order):
    """Chern-Moser normal form of a Levi nondegenerate germ to ``order``."""
    if not germ.phi.coeff(1, 1, 0):
        raise LeviDegenerate("the Levi form vanishes; use the finite type normalizations")
    prep = _prepare(germ, 2, scale_model=True)
    return _finish(germ, prep, NormalFormCase.CHERN_MOSER, order)


def _finite_type_prep(germ, model, max_k=None):
    prep = _prepare(germ, max_k, scale_model=False)
    if prep.k == 2:
        raise WrongCase("Levi nondegenerate germ; use chern_moser_normalize")
    if model is not None and (model.k != prep.k or classify_model(model) != classify_model(prep.model)):
        raise WrongCase(f"supplied model {model} does not match the germ's model {prep.model}")
    return prep


def generic_normalize(germ, model=None, order=None):
    """Normal form for a generic model; ``model`` is checked when supplied."""
    prep = _finite_type_prep(germ, model)
    klass = classify_model(prep.model)
    if klass is ModelClass.TUBULAR:
        raise TubularUnsupported()
    if klass is not ModelClass.GENERIC:
        raise WrongCase(f"model {prep.model} is {klass}, not Generic")
    order = prep.phi.trunc if order is None else order
    return _finish(germ, prep, NormalFormCase.GENERIC, order)


def circular_normalize(germ, model=None, order=None):
    """Normal form for a circular model ``a |z|^k``; the model is scaled to ``|z|^k``."""
    prep = _finite_type_prep(germ, model)
    klass = classify_model(prep.model)
    if klass is not ModelClass.CIRCULAR:
        raise WrongCase(f"model {prep.model} is {klass}, not Circular")
    c = prep.model.coeff(prep.k // 2).re
    if c != 1:
        S = linear_map(1, 1 / c, prep.phi.trunc, prep.phi.weighting)
        prep.phi = transform_series(prep.phi, S)
        prep.pre_map = prep.pre_map.then(S.reweight(prep.pre_map.weighting, prep.pre_map.order))
        prep.model = ModelPoly.from_series(prep.phi, prep.k)
    order = prep.phi.trunc if order is None else order
    return _finish(germ, prep, NormalFormCase.CIRCULAR, order)


def tubular_normalize(*args, **kwargs):
    raise TubularUnsupported()


def normalize(germ, order=None, max_k=None):
    """Dispatch on the type and the model class."""
    hr = remove_harmonics(germ, max_k)
    if hr.k == 2:
        order = hr.germ.trunc if order is None else order
        return chern_moser_normalize(germ, order)
    klass = classify_model(hr.model)
    if klass is ModelClass.TUBULAR:
        raise TubularUnsupported()
    if klass is ModelClass.CIRCULAR:
        return circular_normalize(germ, order=order)
    return generic_normalize(germ, order=order)


# ---------------------------------------------------------------------------
# symmetry action


def _symmetry_map(report, h):
    k = report.k
    wt = report.normalized.weighting
    order = report.order
    case = report.case
    if isinstance(h, SphereAutomorphism):
        if case is not NormalFormCase.CHERN_MOSER:
            raise CaseMismatch("sphere automorphisms act on Chern-Moser normal forms")
        return h.to_map(order, wt)
    if isinstance(h, CircularAutomorphism):
        if case is not NormalFormCase.CIRCULAR or h.k != k:
            raise CaseMismatch("circular automorphism does not match the report")
        return h.to_map(order, wt)
    if isinstance(h, LinearSymmetry):
        if case is not NormalFormCase.GENERIC:
            raise CaseMismatch("linear model symmetries act on generic normal forms")
        if not h.preserves(report.model):
            raise CaseMismatch("the linear map does not preserve the model")
        return h.to_map(order, wt)
    if isinstance(h, FormalMap):
        return h
    raise TypeError(f"unsupported symmetry {h!r}")


def act(report, T):
    """Transform the normal form by ``T`` and renormalize (identity gauge).

    The pre-normalization is the identity whenever ``T`` preserves the
    model, so the composite map carries the symmetry parameters of ``T``.
    """
    phi = report.normalized.phi.truncate(report.order)
    moved = transform_series(phi, T)
    model = ModelPoly.from_series(moved, report.k)
    if report.case is NormalFormCase.GENERIC:
        if classify_model(model) is not ModelClass.GENERIC:
            raise CaseMismatch("the map does not carry the model to a generic model")
    elif model != report.model:
        raise CaseMismatch("the map does not preserve the model")
    if any(key[1] == 0 and key[2] == 0 and key[0] <= report.k for key in moved.keys()):
        raise CaseMismatch("the map introduces harmonic terms at the model degree")
    cur, rest = _solve_grades(report.case, model, moved, report.order)
    conditions = certify(report.case, model, cur, report.order)
    return NormalFormReport(
        report.normalized, Germ(cur), T.then(rest), conditions, report.case, report.order, model
    )


def apply_symmetry(report, h):
    """Act on a normal form by an element of the model's symmetry group."""
    return act(report, _symmetry_map(report, h))
