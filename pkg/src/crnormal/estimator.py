"""scikit-learn style wrappers around the normalization pipeline.

Germs are not feature vectors, so ``X`` is a sequence of germs (or germ
file texts, or mappings in germ-file layout) rather than an array.
"""

from collections.abc import Mapping
import json

from sklearn.base import BaseEstimator, TransformerMixin

from .exceptions import InputError
from .hypersurface import Germ

__all__ = ["check_germ", "check_germs", "check_order", "GermNormalizer", "AutClassifier"]


def check_germ(obj):
    """Coerce ``obj`` to a :class:`Germ`.

    Accepts a Germ, a germ-file text, or a mapping in germ-file layout.
    """
    from .germfile import parse_germ

    if isinstance(obj, Germ):
        return obj
    if isinstance(obj, str):
        return parse_germ(obj)
    if isinstance(obj, Mapping):
        return parse_germ(json.dumps(obj))
    raise InputError(f"expected a germ, germ-file text or mapping, got {type(obj).__name__}")


def check_germs(X):
    if isinstance(X, (Germ, str, Mapping)):
        raise InputError("expected a sequence of germs")
    return [check_germ(x) for x in X]


def check_order(order, allow_none=True):
    if order is None and allow_none:
        return None
    if isinstance(order, bool) or not isinstance(order, int) or order < 1:
        raise InputError(f"order must be a positive integer, got {order!r}")
    return order


class GermNormalizer(TransformerMixin, BaseEstimator):
    """Map germs to their normal form reports.

    Parameters
    ----------
    order : int or None
        Weighted order of the normalization; ``None`` uses each germ's
        truncation.
    max_k : int or None
        Largest type searched for; ``None`` uses the truncation.
    """

    def __init__(self, order=None, max_k=None):
        self.order = order
        self.max_k = max_k

    def fit(self, X, y=None):
        check_order(self.order)
        check_order(self.max_k)
        self.n_germs_seen_ = len(check_germs(X))
        return self

    def transform(self, X):
        from .normalform import normalize

        return [normalize(g, self.order, self.max_k) for g in check_germs(X)]


class AutClassifier(BaseEstimator):
    """Predict the automorphism-group case (1..4) of finite type germs."""

    def __init__(self, order=None):
        self.order = order

    def fit(self, X, y=None):
        check_order(self.order)
        self.n_germs_seen_ = len(check_germs(X))
        return self

    def predict_verdicts(self, X):
        from .classify import classify_aut
        from .normalform import normalize

        return [classify_aut(normalize(g, self.order)) for g in check_germs(X)]

    def predict(self, X):
        return [v.case_id for v in self.predict_verdicts(X)]
