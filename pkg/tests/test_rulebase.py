import numpy as np
import pytest

from frikit.errors import DimensionMismatch, NoFlankingRules
from frikit.rulebase import (
    LinguisticPartition, Observation, Rule, RuleBase, fuzzy_distance, select_flanking,
    validate_rulebase,
)
from frikit.sets import make_set, singleton, triangle
from frikit.benchmark.examples import build_example
from conftest import sym_base, two_rule_base


class TestValidation:
    def test_symmetric_base_is_valid(self):
        assert validate_rulebase(sym_base()).ok

    def test_identical_antecedents_are_unordered(self):
        rb = two_rule_base(triangle(0, 1, 2), triangle(0, 1, 2), triangle(20, 21, 22), triangle(28, 29, 30))
        rep = validate_rulebase(rb)
        assert rep.ordering_violations and not rep.ok

    def test_low_peak_consequent_is_not_cnf(self):
        low = make_set([(28, 0), (29, 0.6), (30, 0)])
        rep = validate_rulebase(two_rule_base(triangle(0, 1, 2), triangle(8, 9, 10), triangle(20, 21, 22), low))
        assert rep.cnf_violations

    def test_duplicate_antecedent_tuple(self):
        rb = sym_base()
        rb = RuleBase(rb.inputs, rb.output, (Rule((0,), 0), Rule((0,), 1)))
        assert validate_rulebase(rb).duplicate_antecedents

    def test_single_rule_is_reported(self):
        rb = sym_base()
        rb = RuleBase(rb.inputs, rb.output, (Rule((0,), 0),))
        assert not validate_rulebase(rb).ok

    @pytest.mark.parametrize("ex", range(1, 8))
    def test_generated_examples_validate(self, ex):
        assert validate_rulebase(build_example(ex, 42).rb).ok


class TestFlanking:
    def test_symmetric_observation(self, s1):
        pair = select_flanking(*s1)
        assert (pair.lower, pair.upper) == (0, 1) and pair.ordered

    def test_identity_match(self, i1):
        pair = select_flanking(*i1)
        assert (pair.lower, pair.upper) == (0, 0) and pair.is_match

    def test_outside_hull(self):
        with pytest.raises(NoFlankingRules):
            select_flanking(sym_base(), Observation((triangle(11, 12, 13),)))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            select_flanking(sym_base(), Observation((triangle(4, 5, 6), triangle(4, 5, 6))))

    @pytest.mark.parametrize("seed", range(5))
    def test_three_dim_examples_find_a_pair(self, seed):
        inst = build_example(6, seed)
        pair = select_flanking(inst.rb, inst.obs)
        ants = [inst.rb.antecedents(pair.lower), inst.rb.antecedents(pair.upper)]
        from frikit.sets import less_than
        assert all(less_than(ants[0][k], inst.obs[k]) and less_than(inst.obs[k], ants[1][k]) for k in range(3))


class TestDistance:
    def test_core_distance(self, s1):
        rb, obs = s1
        d = fuzzy_distance(obs.sets, rb.antecedents(0), alpha=1.0)
        assert (d.d_lower, d.d_upper) == pytest.approx((4, 4))

    @pytest.mark.parametrize("kind", ["euclidean-endpoints", "center", "reference-point"])
    def test_self_distance_is_zero(self, kind):
        a = (triangle(0, 1, 2), triangle(3, 4, 6))
        d = fuzzy_distance(a, a, kind=kind)
        assert (d.d_lower, d.d_upper) == (0, 0)

    def test_three_dim_aggregation(self):
        a = (singleton(0), singleton(0), singleton(0))
        b = (singleton(3), singleton(0), singleton(4))
        assert fuzzy_distance(a, b).d_lower == pytest.approx(5.0)

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            fuzzy_distance((singleton(0),), (singleton(1),), kind="hausdorff")
