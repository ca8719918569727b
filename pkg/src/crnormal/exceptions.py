"""Exception hierarchy.

Domain verdicts that callers are expected to branch on (for instance an
unsupported tubular model) derive from :class:`DomainError`; malformed input
derives from :class:`InputError`.  The CLI maps the former to exit status 1
and the latter to exit status 2.
"""


class CRNormalError(Exception):
    """Base class for every error raised by this package."""


class DomainError(CRNormalError):
    """A well-formed request the engine declines or cannot complete."""


class InputError(CRNormalError, ValueError):
    """Malformed or inconsistent input data."""


class WeightMismatch(InputError):
    pass


class DegreeMismatch(InputError):
    pass


class IllFormedSurface(InputError):
    pass


class RealityViolation(CRNormalError):
    """A series that must be hermitian-real is not (signals an internal bug)."""


class NonInvertibleLinearPart(InputError):
    pass


class TruncationTooLow(DomainError):
    pass


class LeviDegenerate(DomainError):
    pass


class WrongCase(DomainError):
    pass


class CaseMismatch(DomainError):
    pass


class UnsupportedCase(DomainError):
    pass


class TubularUnsupported(UnsupportedCase):
    def __init__(self, msg="tubular models are not normalized here; see [Ko1]"):
        super().__init__(msg)


class SingularSystem(DomainError):
    """The linear system at some weighted degree has an unexpected rank defect."""


class ParseError(InputError):
    def __init__(self, msg, line=None, field=None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        super().__init__(f"{msg} ({', '.join(where)})" if where else msg)
