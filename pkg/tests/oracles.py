"""Independent reference computations used by the tests.

* ``probe_normalize`` rebuilds every grade's linear system by pushing unit
  map coefficients through the nonlinear change of variables, instead of
  using the closed-form operator, and solves it in the same gauge.
* ``sympy_transform`` solves the change of variables formula in a sympy
  polynomial ring over Q(i), iterating on the source point of each image
  point rather than solving for the new defining function.
"""

from sympy import ring
from sympy.polys.domains import QQ, QQ_I

from crnormal.coeffs import GaussianRational
from crnormal.linalg import solve_exact
from crnormal.maps import FormalMap
from crnormal.normalform import (
    _prepare,
    condition_functionals,
    grade_unknowns,
    _evaluate,
    _column_map,
    NormalFormCase,
)
from crnormal.series import RealSeries3
from crnormal.transform import transform_series

R, Z, ZB, U = ring("z zb u", QQ_I)


def probe_system(case, model, phi, mu):
    cols = grade_unknowns(model.k, mu)
    funcs = condition_functionals(case, model, mu)
    base = phi.weight_part(mu)
    A_cols = []
    for col in cols:
        f, g = _column_map(col, phi.trunc, phi.weighting)
        moved = transform_series(phi, FormalMap(f, g)).weight_part(mu)
        delta = (base - moved).coeffs  # = L(e_col)
        A_cols.append([_evaluate(terms, delta) for _, _, terms in funcs])
    A = [list(row) for row in zip(*A_cols)]
    b = [_evaluate(terms, base.coeffs) for _, _, terms in funcs]
    return cols, A, b


def probe_normalize(germ, order, case):
    """Grade-by-grade normalization with probed matrices (same gauge)."""
    scale = case is NormalFormCase.CHERN_MOSER
    prep = _prepare(germ, 2 if scale else None, scale_model=scale)
    if case is NormalFormCase.CIRCULAR and prep.model.coeff(prep.k // 2) != 1:
        c = prep.model.coeff(prep.k // 2).re
        from crnormal.maps import linear_map
        from crnormal.hypersurface import ModelPoly

        prep.phi = transform_series(prep.phi, linear_map(1, 1 / c, prep.phi.trunc, prep.phi.weighting))
        prep.model = ModelPoly.from_series(prep.phi, prep.k)
    wt = prep.phi.weighting
    cur = prep.phi.truncate(order)
    maps = []
    for mu in range(prep.k + 1, order + 1):
        cols, A, b = probe_system(case, prep.model, cur, mu)
        sol = solve_exact(A, b)
        assert sol.consistent, f"probed system inconsistent at {mu}"
        f, g = {}, {}
        for (comp, key, part), v in zip(cols, sol.x):
            if v:
                d = f if comp == "f" else g
                d[key] = d.get(key, GaussianRational(0)) + (
                    GaussianRational(v) if part == "re" else GaussianRational(0, v)
                )
        T = FormalMap.from_coeffs(f, g, order, wt)
        maps.append((mu, T))
        cur = transform_series(cur, T)
    return cur, maps


# ---------------------------------------------------------------------------


def _gauss(c):
    return QQ_I(QQ(int(c.re.numerator), int(c.re.denominator)), QQ(int(c.im.numerator), int(c.im.denominator)))


def _trunc(p, n, W):
    return R({mon: c for mon, c in p.terms() if mon[0] + mon[1] + W * mon[2] <= n})


def _conj(p):
    return R({(j, i, m): QQ_I(c.x, -c.y) for (i, j, m), c in p.terms()})


def _compose(poly_terms, a, b, n, W):
    """``sum c a^i b^j`` for holomorphic terms ``{(i, j): c}``, truncated."""
    out = R(0)
    for (i, j), c in poly_terms.items():
        t = R(1)
        for _ in range(i):
            t = _trunc(t * a, n, W)
        for _ in range(j):
            t = _trunc(t * b, n, W)
        out += t * _gauss(c)
    return _trunc(out, n, W)


def _compose3(series, a, ab, c, n, W):
    out = R(0)
    for (i, j, m), k in series.items():
        t = R(1)
        for f, e in ((a, i), (ab, j), (c, m)):
            for _ in range(e):
                t = _trunc(t * f, n, W)
        out += t * _gauss(k)
    return _trunc(out, n, W)


def sympy_transform(phi, T):
    """``Phi*(z, u) = Phi(Z, U) + Im g(Z, U + i Phi)`` with ``(Z, U)`` the source point.

    The source point solves ``z = Z + f(Z, W)``, ``u = U + Re g(Z, W)`` with
    ``W = U + i Phi(Z, U)``; after dividing out the linear part each
    fixed-point step gains at least half a weighted order.
    """
    Wt = phi.weighting.u_weight
    n = min(phi.trunc, T.order)
    phi = phi.truncate(n)
    half = QQ_I(1, 0) / 2
    lam, delta = T.linear_part()
    inv_lam = QQ_I(1, 0) / _gauss(lam)
    inv_delta = QQ_I(1, 0) / _gauss(GaussianRational(delta))
    f_rest = {key: c for key, c in T.f.items() if key != (1, 0)}
    g_rest = {key: c for key, c in T.g.items() if key != (0, 1)}
    Zp, Up = Z, U
    # each pass fixes at least one more order in Z' or U', so 2n + 2
    # passes reach the fixed point; stop early once it is exact
    for _ in range(2 * n + 2):
        ph = _compose3(phi, Zp, _conj(Zp), Up, n, Wt)
        wv = Up + QQ_I(0, 1) * ph
        f = _compose(f_rest, Zp, wv, n, Wt)
        g = _compose(g_rest, Zp, wv, n, Wt)
        # lam Z' + f = z and delta U' + Re g = u
        Zn = (Z - f) * inv_lam
        Un = (U - (g + _conj(g)) * half) * inv_delta
        if Zn == Zp and Un == Up:
            break
        Zp, Up = Zn, Un
    ph = _compose3(phi, Zp, _conj(Zp), Up, n, Wt)
    wv = Up + QQ_I(0, 1) * ph
    g = _compose(T.g.coeffs, Zp, wv, n, Wt)
    out = ph + (g - _conj(g)) * (QQ_I(0, -1) / 2)
    terms = {}
    for key, c in _trunc(out, n, Wt).terms():
        terms[key] = GaussianRational(
            f"{c.x.numerator}/{c.x.denominator}", f"{c.y.numerator}/{c.y.denominator}"
        )
    return RealSeries3(terms, n, phi.weighting)
