"""Local automorphism groups of finite type germs.

Exactly one of four cases occurs for a germ of finite type ``k > 2``:

1. the germ is equivalent to ``S_k: v = |z|^k``; the group has dimension 3;
2. the germ is a model with ``l < k/2``; the group is ``R+ x Z_m``;
3. the normal form reads ``v = G(|z|^2, u)``; the group is a circle;
4. otherwise the group is finite cyclic ``Z_m``.

Symmetries of a normal form have finite order in cases 3 and 4, so their
``w``-component is the identity and they act on the normal form as linear
maps ``z -> e^{i theta} z, w -> eps w``.  The coefficient ``c_{ijm}`` is
preserved iff ``e^{i theta (i - j)} = eps^(1 - m)``; ``m`` is the order of
the group of such rotations.  Coefficients beyond the truncation can only
remove symmetries, so at finite order the computed value is a multiple of
the true ``m``.
"""

from dataclasses import dataclass
from enum import Enum
from math import gcd

from .exceptions import UnsupportedCase
from .hypersurface import model_symmetries, _rotation_group
from .normalform import NormalFormCase, NormalFormReport

__all__ = ["AutStructure", "AutVerdict", "classify_aut", "jet_order"]


class AutStructure(str, Enum):
    FULL_SPHERE_GROUP = "FullSphereGroup"
    NONCOMPACT_LINE_X_CYCLIC = "NoncompactLine×Cyclic"
    CIRCLE = "Circle"
    CYCLIC = "Cyclic"

    def __str__(self):
        return self.value


_DIMENSION = {1: 3, 2: 1, 3: 1, 4: 0}
_STRUCTURE = {
    1: AutStructure.FULL_SPHERE_GROUP,
    2: AutStructure.NONCOMPACT_LINE_X_CYCLIC,
    3: AutStructure.CIRCLE,
    4: AutStructure.CYCLIC,
}


@dataclass(frozen=True)
class AutVerdict:
    case_id: int
    dimension: int
    structure: AutStructure
    m: int = None  # None outside cases 2 and 4
    order_of_validity: int = 0
    note: str = ""

    def __post_init__(self):
        if self.case_id not in _DIMENSION:
            raise ValueError(f"case_id must be 1..4, got {self.case_id}")
        if self.dimension != _DIMENSION[self.case_id]:
            raise ValueError("dimension does not match the case")
        if (self.m is not None) != (self.case_id in (2, 4)):
            raise ValueError("m is reported exactly in cases 2 and 4")

    def __str__(self):
        m = "" if self.m is None else f", m={self.m}"
        return (
            f"case {self.case_id}: dimension {self.dimension}, {self.structure}{m} "
            f"(valid to weighted order {self.order_of_validity})"
        )


def _finite_order(report, F):
    """Order of the rotation group preserving the normal form."""
    pairs = [(i - j, 1 - m) for (i, j, m) in F.keys()]
    pairs += [(2 * j - report.k, 1) for j in report.model.a]
    if report.case is NormalFormCase.CIRCULAR:
        # only w -> +w: rotations by multiples of 2 pi / D
        D = 0
        for d, _ in pairs:
            D = gcd(D, abs(d))
        return D or None
    found = _rotation_group(pairs)
    return None if found is None else found[0]


def classify_aut(report):
    """The automorphism-group case of a normalized finite type germ."""
    if not isinstance(report, NormalFormReport):
        raise TypeError("classify_aut expects a NormalFormReport")
    if report.case is NormalFormCase.CHERN_MOSER:
        raise UnsupportedCase(
            "the classification covers finite type k > 2; a Levi nondegenerate germ "
            "has the Chern-Moser normal form"
        )
    N = report.order
    F = report.normal_part()
    circular = report.case is NormalFormCase.CIRCULAR
    if F.is_zero():
        if circular:
            return AutVerdict(1, 3, _STRUCTURE[1], None, N, "equivalent to S_k")
        m = model_symmetries(report.model).finite_order
        return AutVerdict(2, 1, _STRUCTURE[2], m, N, "model hypersurface with l < k/2")
    if circular and all(i == j for (i, j, _) in F.keys()):
        return AutVerdict(3, 1, _STRUCTURE[3], None, N, "v = G(|z|^2, u)")
    m = _finite_order(report, F)
    note = f"rotation symmetries of the normal form to order {N}"
    if m > 1:
        note += f"; the true m divides {m}"
    return AutVerdict(4, 0, _STRUCTURE[4], m, N, note)


def jet_order(verdict):
    """Number of jets determining local automorphisms: 2 for ``S_k``, else 1."""
    if isinstance(verdict, NormalFormReport):
        verdict = classify_aut(verdict)
    return 2 if verdict.case_id == 1 else 1
