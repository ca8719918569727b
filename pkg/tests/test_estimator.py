import pytest
from sklearn.base import clone

from crnormal.estimator import AutClassifier, GermNormalizer, check_germ, check_germs, check_order
from crnormal.exceptions import InputError
from crnormal.germfile import dump_germ

from conftest import germ

SPHERE = germ({(1, 1, 0): 1}, 8)
CASE2 = germ({(3, 1, 0): 1, (1, 3, 0): 1}, 12, 4)


def test_check_helpers():
    assert check_germ(SPHERE) is SPHERE
    assert check_germ(dump_germ(SPHERE)).phi == SPHERE.phi
    mapping = {"weights": {"u": 2}, "truncation": 4, "terms": [{"i": 1, "j": 1, "m": 0, "re": "1", "im": "0"}]}
    assert check_germ(mapping).phi.coeff(1, 1, 0) == 1
    with pytest.raises(InputError):
        check_germ(3)
    with pytest.raises(InputError):
        check_germs(SPHERE)
    for bad in (0, -1, 2.5, True):
        with pytest.raises(InputError):
            check_order(bad)
    assert check_order(None) is None


def test_normalizer():
    est = GermNormalizer(order=8)
    reports = est.fit([SPHERE]).transform([SPHERE])
    assert est.n_germs_seen_ == 1
    assert reports[0].normal_part().is_zero()
    assert clone(est).get_params() == {"order": 8, "max_k": None}
    with pytest.raises(InputError):
        GermNormalizer(order=0).fit([SPHERE])


def test_classifier():
    clf = AutClassifier(order=12).fit([CASE2])
    assert clf.predict([CASE2]) == [2]
    assert clf.predict_verdicts([CASE2])[0].m == 4
