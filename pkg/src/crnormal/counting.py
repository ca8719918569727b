"""Poincare's second counting argument and a linearized contact check.

A real hypersurface ``v = Phi(z, zbar, u)`` has ``N`` real Taylor
coefficients of order ``2..n``, while a biholomorphic map offers ``N'``
real coefficients of order ``1..n``.  Once ``N > N'`` (first at ``n = 9``)
generic hypersurfaces cannot all be equivalent.
"""

from dataclasses import dataclass

from .coeffs import GaussianRational, ONE
from .exceptions import TruncationTooLow, WeightMismatch
from .linalg import solve_exact
from .maps import FormalMap
from .series import RealSeries3, HoloSeries2, compose_on_surface

__all__ = [
    "CountRow",
    "surface_count",
    "map_count",
    "count_table",
    "threshold",
    "ContactReport",
    "linearized_contact_check",
]


def surface_count(n):
    return (n + 1) * (n + 2) * (n + 3) // 6 - 1


def map_count(n):
    return 2 * n * n + 6 * n


@dataclass(frozen=True)
class CountRow:
    n: int
    N: int
    Nprime: int

    @property
    def solvable_expected(self):
        return self.N <= self.Nprime


def count_table(max_n):
    if max_n < 1:
        raise ValueError("max_n must be at least 1")
    return [CountRow(n, surface_count(n), map_count(n)) for n in range(1, max_n + 1)]


def threshold():
    """Smallest ``n`` with ``n^2 > 6n + 25``."""
    n = 1
    while n * n <= 6 * n + 25:
        n += 1
    return n


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ContactReport:
    n: int
    unknowns: int
    equations: int
    rank: int
    consistent: bool
    map: FormalMap = None  # a solution of the linear system, when consistent


def _first_variation(phi, f, g, n):
    """First-order change of ``phi`` under ``z* = z + f, w* = w + g``.

    ``Im g - 2 Re(Phi_z f) - Phi_u Re g``, with ``f`` and ``g`` evaluated on
    ``w = u + i Phi``.  ``f`` has no terms of weight below two and ``g`` none
    below the weight ``W`` of ``u``, so the derivatives are only needed to
    orders ``n - 2`` and ``n - W``.
    """
    wt = phi.weighting
    pz = RealSeries3({(i - 1, j, m): c * i for (i, j, m), c in phi.items() if i}, n, wt)
    pu = RealSeries3({(i, j, m - 1): c * m for (i, j, m), c in phi.items() if m}, n, wt)
    fs = compose_on_surface(f, phi)
    gs = compose_on_surface(g, phi)
    re_g = gs.real_part()
    return gs.imag_part() - (pz * fs).real_part().scale(2) - pu * re_g


def _unknowns(n, W):
    cols = []
    for comp in ("f", "g"):
        for b in range(n // W + 1):
            for a in range(n - W * b + 1):
                if (a, b) in ((0, 0), (1, 0) if comp == "f" else (0, 1)):
                    continue
                if comp == "g" and b == 0 and a < W:
                    continue
                cols.append((comp, (a, b), "re"))
                cols.append((comp, (a, b), "im"))
    return cols


def linearized_contact_check(g1, g2, n):
    """Linear system for order-``n`` contact of ``T(g1)`` with ``g2``.

    Unknowns are the map coefficients of weighted degree ``2..n`` (the
    linear part is fixed to the identity); the equations are the real and
    imaginary parts of the coefficients of ``Phi1 + delta Phi1 - Phi2`` of
    weighted degree at most ``n``, ``delta Phi1`` being the first variation.
    """
    p1, p2 = g1.phi, g2.phi
    if p1.weighting != p2.weighting:
        raise WeightMismatch("germs use different weightings")
    if n > min(p1.trunc, p2.trunc):
        raise TruncationTooLow(f"contact order {n} exceeds the truncation")
    wt = p1.weighting
    p1, p2 = p1.truncate(n), p2.truncate(n)
    cols = _unknowns(n, wt.u_weight)
    zero = HoloSeries2.zero(n, wt)
    images = []
    for comp, key, part in cols:
        h = HoloSeries2({key: ONE if part == "re" else GaussianRational(0, 1)}, n, wt)
        f, g = (h, zero) if comp == "f" else (zero, h)
        images.append(_first_variation(p1, f, g, n).coeffs)
    target = (p2 - p1).coeffs
    rows = sorted(
        key for key in set(target) | {key for im in images for key in im}
        if key[0] >= key[1]
    )
    A, b = [], []
    zero_c = GaussianRational(0)
    for key in rows:
        A.append([im.get(key, zero_c).re for im in images])
        b.append(target.get(key, zero_c).re)
        if key[0] != key[1]:
            A.append([im.get(key, zero_c).im for im in images])
            b.append(target.get(key, zero_c).im)
    if not A:
        return ContactReport(n, len(cols), 0, 0, True, FormalMap.identity(n, wt))
    sol = solve_exact(A, b)
    T = None
    if sol.consistent:
        fc, gc = {}, {}
        for (comp, key, part), v in zip(cols, sol.x):
            if v:
                d = fc if comp == "f" else gc
                d[key] = d.get(key, zero_c) + (GaussianRational(v) if part == "re" else GaussianRational(0, v))
        T = FormalMap.from_coeffs(fc, gc, n, wt)
    return ContactReport(n, len(cols), len(A), sol.rank, sol.consistent, T)
