import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from frikit.estimator import FuzzyRuleInterpolator, uniform_levels
from frikit.fis import parse_fis
from frikit.rulebase import Observation
from frikit.sets import membership_deviation, triangle
from conftest import sym_base, two_rule_base


def test_params_round_trip():
    est = FuzzyRuleInterpolator(method="maci", levels=5)
    assert est.get_params()["method"] == "maci"
    other = clone(est).set_params(method="GM")
    assert other.method == "GM" and other.levels == 5


def test_predict_before_fit():
    with pytest.raises(NotFittedError):
        FuzzyRuleInterpolator().predict(triangle(4, 5, 6))


def test_fit_accepts_document(fixtures_dir):
    doc = parse_fis((fixtures_dir / "s1.fis").read_text())
    est = FuzzyRuleInterpolator("SCALE_MOVE").fit(doc)
    (c,) = est.predict(Observation((triangle(4, 5, 6),)))
    assert membership_deviation(c.to_set(), triangle(24, 25, 26)) <= 1e-9


def test_predict_many():
    est = FuzzyRuleInterpolator("KH").fit(sym_base())
    out = est.predict([(triangle(4, 5, 6),), Observation((triangle(2, 3, 4),))])
    assert len(out) == 2 and out[0].geometry() == pytest.approx((24, 25, 25, 26))


def test_abnormality_verdicts():
    est = FuzzyRuleInterpolator("KH").fit(sym_base())
    assert est.abnormality(triangle(4, 5, 6))[0].abnormal is False


def test_uniform_levels_in_config():
    est = FuzzyRuleInterpolator("KH", levels=3).fit(sym_base())
    assert est.predict(triangle(4, 5, 6))[0].levels.tolist() == [0, 0.5, 1]


@pytest.mark.parametrize("bad", [1, 0, 2.5, True])
def test_level_count_validated(bad):
    with pytest.raises(ValueError):
        uniform_levels(bad)


@pytest.mark.parametrize("kw", [{"method": "nope"}, {"rp_mode": "median"}, {"power_p": 0}, {"polar_thetas": -1}])
def test_bad_params_rejected_at_fit(kw):
    with pytest.raises(ValueError):
        FuzzyRuleInterpolator(**kw).fit(sym_base())


def test_invalid_rule_base_rejected():
    rb = two_rule_base(triangle(0, 1, 2), triangle(0, 1, 2), triangle(20, 21, 22), triangle(28, 29, 30))
    with pytest.raises(ValueError, match="not strictly ordered"):
        FuzzyRuleInterpolator().fit(rb)


def test_wrong_input_type():
    with pytest.raises(TypeError):
        FuzzyRuleInterpolator().fit("rules.fis")


def test_dimension_checked():
    est = FuzzyRuleInterpolator().fit(sym_base())
    with pytest.raises(ValueError):
        est.predict((triangle(4, 5, 6), triangle(4, 5, 6)))
