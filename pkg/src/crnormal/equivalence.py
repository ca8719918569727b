"""Formal equivalence of germs up to a weighted order.

Both germs are normalized; the normal forms are then compared modulo the
action of the model's symmetry group.  The linear part of a candidate
symmetry is read off from the tensorial transformation rule

    c*_{ijm} = rho^(1-m) lam^(-i) conj(lam)^(-j) c_{ijm}

(``z* = lam z``, ``w* = rho w``), which holds for all coefficients of a
generic normal form and for the lowest non-model weight of a Chern-Moser or
circular one.  Roots are located numerically, rounded to Gaussian rationals
and then checked exactly; the remaining continuous parameters (``a`` and
``mu`` of the sphere group, ``mu`` of the circular group) enter affinely at
the next weights and are solved for exactly.  Every positive verdict is
backed by an exact comparison of the transformed normal form.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import mpmath

from .coeffs import GaussianRational
from .exceptions import TubularUnsupported, CaseMismatch
from .hypersurface import (
    InfiniteTypeWithinTruncation,
    ModelClass,
    classify_model,
    remove_harmonics,
)
from .linalg import solve_exact
from .maps import FormalMap, linear_map, sphere_map, circular_map
from .normalform import NormalFormCase, act, normalize

__all__ = ["EquivalenceVerdict", "EquivalenceResult", "equivalent"]

_DPS = 60
_TOL = mpmath.mpf(10) ** -40
_MAX_DEN = 10**12


class EquivalenceVerdict(str, Enum):
    EQUIVALENT = "EquivalentToOrder"
    DISTINCT = "DistinctToOrder"
    UNSUPPORTED = "Unsupported"
    INCONCLUSIVE = "InconclusiveToOrder"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class EquivalenceResult:
    verdict: EquivalenceVerdict
    order: int
    reason: str = ""
    witness: FormalMap = None  # symmetry carrying the first normal form to the second

    def __bool__(self):
        return self.verdict is EquivalenceVerdict.EQUIVALENT


def _type(germ, order):
    try:
        return remove_harmonics(germ, min(order, germ.trunc)).k
    except InfiniteTypeWithinTruncation:
        return None


def equivalent(g1, g2, order):
    """Decide formal equivalence of two germs up to weighted order ``order``."""
    V = EquivalenceVerdict
    k1, k2 = _type(g1, order), _type(g2, order)
    if k1 is None and k2 is None:
        return EquivalenceResult(V.UNSUPPORTED, order, "both germs are of infinite type within the truncation")
    if k1 != k2:
        return EquivalenceResult(V.DISTINCT, order, f"types differ: {k1} vs {k2}")
    k = k1
    if k > 2:
        c1 = classify_model(remove_harmonics(g1, k).model)
        c2 = classify_model(remove_harmonics(g2, k).model)
        if ModelClass.TUBULAR in (c1, c2):
            raise TubularUnsupported()
        if c1 != c2:
            return EquivalenceResult(V.DISTINCT, order, f"model classes differ: {c1} vs {c2}")
    r1, r2 = normalize(g1, order), normalize(g2, order)
    n1 = r1.normalized.phi.truncate(order)
    n2 = r2.normalized.phi.truncate(order)
    if n1 == n2:
        return EquivalenceResult(V.EQUIVALENT, order, "identical normal forms", FormalMap.identity(order, n1.weighting))
    return _match(r1, r2, order)


# ---------------------------------------------------------------------------
# numeric candidates for the linear part


def _mpc(c):
    re = mpmath.mpf(int(c.re.numerator)) / int(c.re.denominator)
    im = mpmath.mpf(int(c.im.numerator)) / int(c.im.denominator)
    return mpmath.mpc(re, im)


def _close(a, b):
    return abs(a - b) <= _TOL * max(1, abs(a), abs(b))


def _linear_candidates(c1, c2, k, sphere_like):
    """Numeric ``(lam, rho)`` compatible with the tensorial rule on ``c1 -> c2``."""
    if set(c1) != set(c2):
        return []
    model_keys = [key for key in c1 if key[2] == 0 and key[0] + key[1] == k]
    higher = [key for key in c1 if key not in model_keys]
    if sphere_like:
        t, signs = mpmath.mpf(1), (1,)
    else:
        key = model_keys[0]
        t, signs = abs(c2[key] / c1[key]), (1, -1)
    if higher:
        i, j, m = max(higher, key=lambda key: abs(c1[key]))
        d = i + j + k * m
        r = (t ** (1 - m) * abs(c1[(i, j, m)]) / abs(c2[(i, j, m)])) ** (mpmath.mpf(1) / (d - k))
    else:
        r = mpmath.mpf(1)
    out = []
    for s in signs:
        rho = s * t * r**k
        phases = []
        ok = True
        for (i, j, m), a in c1.items():
            q = c2[(i, j, m)] / (a * rho ** (1 - m) * r ** (-(i + j)))
            if not _close(abs(q), 1):
                ok = False
                break
            phases.append((i - j, q))
        if not ok:
            continue
        steps = [(n, q) for n, q in phases if n]
        if any(not n and not _close(q, 1) for n, q in phases):
            continue
        if steps:
            n, q = min(steps, key=lambda p: abs(p[0]))
            thetas = [(-mpmath.arg(q) + 2 * mpmath.pi * t_) / n for t_ in range(abs(n))]
        else:
            thetas = [mpmath.mpf(0)]
        for theta in thetas:
            e = mpmath.expjpi(theta / mpmath.pi)
            if all(_close(mpmath.power(e, -n), q) for n, q in steps):
                out.append((r * e, rho))
    return out


def _rational(x):
    x = mpmath.mpf(x)
    man, exp = x.man_exp  # man_exp drops the sign
    f = (Fraction(int(man)) * Fraction(2) ** int(exp)).limit_denominator(_MAX_DEN)
    return -f if x < 0 else f


def _gaussian(z):
    return GaussianRational(_rational(mpmath.re(z)), _rational(mpmath.im(z)))


# ---------------------------------------------------------------------------
# matching


def _numeric_coeffs(phi, lo, hi):
    return {key: _mpc(c) for key, c in phi.items() if lo <= phi.weighting.degree(key) <= hi}


def _affine_solve(probe, base, directions, target):
    """Exact real solve of ``probe(base + sum x_t e_t) == target`` on one weight.

    ``probe`` maps a parameter value to a coefficient dict; the dependence is
    assumed affine (it is verified afterwards by the exact comparison).
    Returns ``(values, determined)`` or ``None`` when inconsistent.
    """
    p0 = probe(base)
    cols = [probe(base + e) for e in directions]
    keys = sorted(set(target) | set(p0) | {key for c in cols for key in c})
    zero = GaussianRational(0)
    A, b = [], []
    for key in keys:
        t0 = p0.get(key, zero) - target.get(key, zero)
        deltas = [c.get(key, zero) - p0.get(key, zero) for c in cols]
        A.append([d.re for d in deltas])
        A.append([d.im for d in deltas])
        b.extend([-t0.re, -t0.im])
    if not A:
        return [0] * len(directions), False
    sol = solve_exact(A, b)
    if not sol.consistent:
        return None
    return sol.x, not sol.free


def _match(r1, r2, order):
    V = EquivalenceVerdict
    case = r1.case
    k = r1.k
    n1 = r1.normalized.phi.truncate(order)
    n2 = r2.normalized.phi.truncate(order)
    wt = n1.weighting
    sphere_like = case is not NormalFormCase.GENERIC
    if sphere_like:
        w1 = [wt.degree(key) for key in n1.keys() if wt.degree(key) > k]
        w2 = [wt.degree(key) for key in n2.keys() if wt.degree(key) > k]
        if not w1 or not w2:
            return EquivalenceResult(V.DISTINCT, order, "exactly one normal form is the model")
        d0 = min(w1)
        if d0 != min(w2):
            return EquivalenceResult(V.DISTINCT, order, "lowest non-model weights differ")
        hi = d0
    else:
        d0, hi = k, order
    with mpmath.workdps(_DPS):
        cands = _linear_candidates(_numeric_coeffs(n1, k, hi), _numeric_coeffs(n2, k, hi), k, sphere_like)
        if not cands:
            return EquivalenceResult(V.DISTINCT, order, "no linear symmetry matches the tensorial data")
        exact = []
        for lam, rho in cands:
            lam_q, rho_q = _gaussian(lam), _rational(rho)
            if _close(_mpc(lam_q), lam) and _close(mpmath.mpf(rho_q.numerator) / rho_q.denominator, rho):
                exact.append((lam_q, rho_q))
    # a numeric match with no Gaussian-rational representative cannot be
    # checked in exact arithmetic
    irrational = len(exact) < len(cands)
    undetermined = False
    cands = exact
    for lam, rho in cands:
        if not lam:
            continue
        if case is NormalFormCase.GENERIC:
            T = linear_map(lam, rho, order, wt)
            found, det = T, True
        elif case is NormalFormCase.CHERN_MOSER:
            found, det = _solve_sphere(r1, n2, lam, d0, order)
        else:
            found, det = _solve_circular(r1, n2, lam, d0, order)
        if found is None:
            undetermined |= not det
            continue
        try:
            image = act(r1, found).normalized.phi.truncate(order)
        except CaseMismatch:
            continue
        if image == n2:
            return EquivalenceResult(V.EQUIVALENT, order, f"linear part lam={lam}", found)
        undetermined |= not det
    if undetermined:
        return EquivalenceResult(
            V.INCONCLUSIVE, order, "orbit matching is underdetermined at this order"
        )
    if irrational:
        return EquivalenceResult(
            V.INCONCLUSIVE, order,
            "a linear part matching the lowest weights has no Gaussian-rational value; "
            "it cannot be checked exactly",
        )
    return EquivalenceResult(V.DISTINCT, order, "no symmetry carries one normal form to the other")


def _weight_coeffs(report, T, weight):
    return dict(act(report, T).normalized.phi.weight_part(weight).items())


def _solve_sphere(r1, n2, lam, d0, order):
    wt = n2.weighting
    det = True
    a = GaussianRational(0)
    if d0 + 1 <= order:
        target = dict(n2.weight_part(d0 + 1).items())
        res = _affine_solve(
            lambda p: _weight_coeffs(r1, sphere_map(lam, p, 0, order, wt), d0 + 1),
            GaussianRational(0),
            [GaussianRational(1), GaussianRational(0, 1)],
            target,
        )
        if res is None:
            return None, True
        (x, y), det_a = res
        a, det = GaussianRational(x, y), det and det_a
    mu = 0
    if d0 + 2 <= order:
        target = dict(n2.weight_part(d0 + 2).items())
        res = _affine_solve(
            lambda p: _weight_coeffs(r1, sphere_map(lam, a, p.re, order, wt), d0 + 2),
            GaussianRational(0),
            [GaussianRational(1)],
            target,
        )
        if res is None:
            return None, det
        (mu,), det_mu = res
        det = det and det_mu
    return sphere_map(lam, a, mu, order, wt), det


def _solve_circular(r1, n2, lam, d0, order):
    wt = n2.weighting
    k = r1.k
    l = k // 2
    mu, det = 0, True
    if d0 + k <= order:
        target = dict(n2.weight_part(d0 + k).items())
        res = _affine_solve(
            lambda p: _weight_coeffs(r1, circular_map(l, lam, p.re, order, wt), d0 + k),
            GaussianRational(0),
            [GaussianRational(1)],
            target,
        )
        if res is None:
            return None, True
        (mu,), det = res
    return circular_map(l, lam, mu, order, wt), det
