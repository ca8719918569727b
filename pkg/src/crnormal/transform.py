"""The action of formal maps on defining equations, and its linearization."""

from gmpy2 import mpq

from .coeffs import GaussianRational
from .exceptions import WeightMismatch, RealityViolation
from .series import RealSeries3, HoloSeries2, compose_on_surface, implicit_solve

__all__ = ["transform_series", "cm_operator", "gcm_operator", "linear_operator"]

_HALF = mpq(1, 2)
_MINUS_HALF_I = GaussianRational(0, mpq(-1, 2))


def transform_series(phi, T):
    """Defining series of the image of ``v = phi`` under ``T``.

    Solves ``Phi*(z + f, conj(z + f), u + Re g) = Phi + Im g`` where ``f``
    and ``g`` are evaluated at ``(z, u + i*Phi)``.
    """
    if phi.weighting != T.weighting:
        raise WeightMismatch("germ and map use different weightings")
    n = min(phi.trunc, T.order)
    phi = phi.truncate(n)
    wt = phi.weighting
    fs = compose_on_surface(T.f.truncate(n), phi)
    gs = compose_on_surface(T.g.truncate(n), phi)
    gs_c = gs.conj()
    Z = RealSeries3.z(n, wt) + fs
    U = RealSeries3.u(n, wt) + (gs + gs_c).scale(_HALF)
    rhs = phi + (gs - gs_c).scale(_MINUS_HALF_I)
    out = implicit_solve((Z, U), rhs, n)
    if not out.is_hermitian():
        raise RealityViolation("transformed defining series is not hermitian")
    return out


def linear_operator(f, g, model):
    """``Re(i g(z, u + iP) + 2 P_z f(z, u + iP))`` for a model series ``P``.

    ``model`` is a :class:`RealSeries3` holding the homogeneous model
    ``P(z, zbar)`` in the grading of ``f`` and ``g``.
    """
    if not (f.weighting == g.weighting == model.weighting):
        raise WeightMismatch("operator arguments use different weightings")
    n = min(f.trunc, g.trunc, model.trunc)
    p = model.truncate(n)
    pz = RealSeries3(
        {(i - 1, j, m): c * i for (i, j, m), c in p.items() if i > 0}, n, p.weighting
    )
    fs = compose_on_surface(f.truncate(n), p)
    gs = compose_on_surface(g.truncate(n), p)
    inner = gs.scale(GaussianRational(0, 1)) + (pz * fs).scale(2)
    return inner.real_part()


def cm_operator(f, g):
    """``Re(2 zbar f(z, u + i|z|^2) + i g(z, u + i|z|^2))``."""
    if f.weighting.u_weight != 2:
        raise WeightMismatch("the Chern-Moser operator uses the grading with u-weight 2")
    n = min(f.trunc, g.trunc)
    sphere = RealSeries3({(1, 1, 0): 1}, n, f.weighting)
    return linear_operator(f, g, sphere)


def gcm_operator(f, g, model):
    """Generalized operator for a :class:`~crnormal.hypersurface.ModelPoly`."""
    if f.weighting.u_weight != model.k:
        raise WeightMismatch(f"the operator for a degree-{model.k} model needs u-weight {model.k}")
    n = min(f.trunc, g.trunc)
    return linear_operator(f, g, model.as_series(n, f.weighting))
