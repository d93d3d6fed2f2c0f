import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frikit.benchmark.examples import build_example
from frikit.conclusion import ALL_METHODS, InterpolationConfig, MethodId
from frikit.errors import MethodInapplicable, NoFlankingRules, NotCnf
from frikit.methods import interpolate
from frikit.methods._base import Problem
from frikit.methods.gm import intermediate_rule
from frikit.methods.lesfri import feat_ls
from frikit.rulebase import FlankingPair, LinguisticPartition, Observation, Rule, RuleBase, select_flanking
from frikit.sets import (
    alpha_cuts, characteristic_points, is_cnf, make_set, membership, membership_deviation,
    reference_point, representative_value, trapezoid, triangle,
)
from conftest import sym_base, two_rule_base
from instances import symmetric_instance
from oracles import kh_1d, ray_hit, vkk_1d

METHODS = [m.value for m in ALL_METHODS]
GENERAL = [m for m in METHODS if m not in ("CRF", "IMUL")]
D1_TRIS = ((0, 1, 2), (7, 9, 11), (3, 4, 5), (1, 2, 4), (8, 10, 11))


def core_mid(c):
    g = c.geometry()
    return (g[1] + g[2]) / 2


@pytest.mark.parametrize("method", METHODS)
class TestSharedFixtures:
    def test_symmetric_fixture(self, method, s1):
        c = interpolate(method, *s1)
        assert membership_deviation(c.to_set(), triangle(24, 25, 26)) <= 1e-9

    def test_identity_fixture(self, method, i1):
        c = interpolate(method, *i1)
        assert membership_deviation(c.to_set(), triangle(20, 21, 22)) <= 1e-9
        assert "matches rule 1" in " ".join(c.notes)

    def test_engine_reaches_consequent_at_flanking_antecedent(self, method):
        rb = sym_base()
        for j in (0, 1):
            obs = Observation((rb.antecedent(j, 0),))
            c = interpolate(method, rb, obs, pair=FlankingPair(0, 1))
            assert membership_deviation(c.to_set(), rb.consequent(j)) <= 1e-9

    @pytest.mark.parametrize("ex", range(1, 8))
    def test_engine_limits_on_examples(self, method, ex):
        rb = build_example(ex, 42).rb
        for i in range(len(rb.rules) - 1):
            for j in (i, i + 1):
                c = interpolate(method, rb, Observation(rb.antecedents(j)), pair=FlankingPair(i, i + 1))
                assert membership_deviation(c.to_set(), rb.consequent(j)) <= 1e-9

    def test_outside_hull(self, method):
        with pytest.raises(NoFlankingRules):
            interpolate(method, sym_base(), Observation((triangle(11, 12, 13),)))

    def test_records_flanking_rules(self, method, s1):
        assert interpolate(method, *s1).rules == (0, 1)


class TestAlphaMethods:
    def test_kh_d1_support_and_core(self, d1):
        c = interpolate("KH", *d1)
        assert c.geometry() == pytest.approx((4.0, 5.0, 5.0, 19 / 3), abs=1e-12)

    @pytest.mark.parametrize("method,oracle", [("KH", kh_1d), ("KH_STAB", kh_1d), ("VKK", vkk_1d)])
    def test_d1_matches_oracle_at_every_level(self, method, oracle, d1):
        c = interpolate(method, *d1)
        inf, sup = c.cuts()
        for a, i, u in zip(c.levels, inf, sup):
            assert (i, u) == pytest.approx(oracle(*D1_TRIS, a), abs=1e-12)

    def test_paper_literal_weights_swap_the_pull(self, d1):
        c = interpolate("KH", *d1, InterpolationConfig(paper_literal_kh=True))
        assert any("printed" in n for n in c.notes)
        # the printed weights pull towards the farther rule: core moves to 2 + (5/8)*8
        assert c.geometry()[1] == pytest.approx(7.0)

    def test_stabilised_uses_every_rule(self):
        inst = build_example(2, 42)
        c = interpolate("KH_STAB", inst.rb, inst.obs)
        assert len(c.weights.rule_weights) == len(inst.rb.rules)
        assert sum(c.weights.rule_weights) == pytest.approx(1.0)

    def test_vkk_reference_point_distance(self, s1):
        c = interpolate("VKK", *s1, InterpolationConfig(vkk_distance="reference-point"))
        assert membership_deviation(c.to_set(), triangle(24, 25, 26)) <= 1e-9


class TestShapeMethodsOnD1:
    @pytest.mark.parametrize("method", ["MACI", "GM", "CRF"])
    def test_reference_point(self, method, d1):
        # lambda_core = (4 - 1) / (9 - 1); reference point 2 + 0.375 * 8
        c = interpolate(method, *d1)
        assert is_cnf(c.to_set()).ok
        assert core_mid(c) == pytest.approx(5.0, abs=1e-12)

    def test_crf_core_offset(self, d1):
        c = interpolate("CRF", *d1)
        assert c.geometry()[1:3] == pytest.approx((5.0, 5.0))

    def test_scale_move_representative_value(self, d1):
        c = interpolate("SCALE_MOVE", *d1)
        lam = ((3 + 4 + 5) / 3 - 1) / ((7 + 9 + 11) / 3 - 1)
        expected = (1 - lam) * (1 + 2 + 4) / 3 + lam * (8 + 10 + 11) / 3
        assert lam == pytest.approx(0.375)
        assert representative_value(c.shape) == pytest.approx(expected, abs=1e-9)
        assert c.weights.lambda_rep == pytest.approx(lam)


class TestImul:
    def test_matched_ratio_leaves_flanks_uncorrected(self):
        a1, a2 = trapezoid(0, 1, 2, 3), trapezoid(10, 13, 14, 16)
        b1, b2 = trapezoid(0, 2, 3, 4), trapezoid(10, 11, 13, 16)
        # reference points 1.5 and 13.5; lambda 0.25 puts A* core mid at 4.5 with
        # flanks 0.75*1 + 0.25*3 and 0.75*1 + 0.25*2
        obs = trapezoid(4 - 1.5, 4, 5, 5 + 1.25)
        c = interpolate("IMUL", two_rule_base(a1, a2, b1, b2), Observation((obs,)))
        g = c.geometry()
        assert g[1] - g[0] == pytest.approx(0.75 * 2 + 0.25 * 1, abs=1e-12)
        assert g[3] - g[2] == pytest.approx(0.75 * 1 + 0.25 * 3, abs=1e-12)

    def test_printed_sum_form_is_noted(self, d1):
        c = interpolate("IMUL", *d1, InterpolationConfig(imul_core_term="sum"))
        assert any("sum form" in n for n in c.notes)

    @pytest.mark.parametrize("method", ["CRF", "IMUL"])
    def test_non_trapezoidal_rejected(self, method):
        odd = make_set([(3, 0), (3.5, 0.5), (4, 1), (5, 0)])
        with pytest.raises(MethodInapplicable):
            interpolate(method, sym_base(), Observation((odd,)))


class TestGm:
    def test_intermediate_rule_is_centred_on_observation(self, d1):
        rb, obs = d1
        p = Problem(rb, obs, InterpolationConfig(), select_flanking(rb, obs))
        ai, bi, lams = intermediate_rule(p)
        assert lams == pytest.approx([0.375])
        assert reference_point(ai[0]) == pytest.approx(4.0)
        assert reference_point(bi) == pytest.approx(5.0)


class TestFripoc:
    def test_identical_antecedents_give_weighted_consequent_blend(self):
        a = triangle(0, 1, 3)
        b1, b2 = triangle(20, 21, 22), trapezoid(26, 28, 29, 30)
        rb = two_rule_base(a, a.shifted(8), b1, b2, (0, 12), (18, 32))
        obs = Observation((a.shifted(2),))
        c = interpolate("FRIPOC", rb, obs)
        # consequent position: inverse squared distances 2 and 6 to the antecedent reference points
        w = np.array([1 / 2 ** 2, 1 / 6 ** 2])
        rbs = np.array([21.0, 28.5])
        pos = float(w @ rbs / w.sum())
        assert core_mid(c) == pytest.approx(pos, abs=1e-9)
        # shape: polar distances of the two consequents blended with 1/d^2 weights from ``pos``
        aspect = 32 - 18
        wb = 1 / np.abs(rbs - pos) ** 2
        for theta in np.linspace(0.0, math.pi, 181):
            rho = sum(wk * ray_hit([(p.x, p.mu) for p in s.points], theta, r, aspect)
                      for wk, s, r in zip(wb, (b1, b2), rbs)) / wb.sum()
            x, mu = pos + rho * math.cos(theta), rho * math.sin(theta) / aspect
            assert membership(c.shape, x) == pytest.approx(mu, abs=1e-9)


class TestLesfri:
    def test_feat_ls_reproduces_a_congruent_term(self):
        t = trapezoid(0, 0.5, 1.2, 2)
        x = LinguisticPartition("x", (0, 30), (t, t.shifted(10), t.shifted(20)))
        y = LinguisticPartition("y", (0, 30), (t, t.shifted(10), t.shifted(20)))
        rb = RuleBase((x,), y, tuple(Rule((j,), j) for j in range(3)))
        obs = Observation((t.shifted(10),))
        p = Problem(rb, obs, InterpolationConfig(), FlankingPair(0, 2))
        inf, sup = feat_ls(p, x.terms, reference_point(t.shifted(10)))
        ti, ts = alpha_cuts(t.shifted(10), p.levels)
        np.testing.assert_allclose(inf, ti, atol=1e-12)
        np.testing.assert_allclose(sup, ts, atol=1e-12)


class TestScaleMove:
    @pytest.mark.parametrize("ex", range(1, 8))
    def test_output_is_cnf(self, ex):
        inst = build_example(ex, 42)
        assert is_cnf(interpolate("SCALE_MOVE", inst.rb, inst.obs).to_set()).ok


class TestInvariants:
    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 10_000), st.sampled_from(GENERAL))
    def test_symmetry_with_extra_breakpoints(self, seed, method):
        rb, obs, expected = symmetric_instance(np.random.default_rng(seed), kinds=("poly",))
        assert membership_deviation(interpolate(method, rb, obs).to_set(), expected) <= 1e-9

    @settings(max_examples=20, deadline=None)
    @given(st.integers(1, 7), st.floats(-25, 25), st.floats(-25, 25), st.sampled_from(METHODS))
    def test_translation_equivariance(self, ex, dx, dy, method):
        inst = build_example(ex, 42)
        rb, obs = inst.rb, inst.obs

        def shift(part, d):
            lo, hi = part.range
            return LinguisticPartition(part.dimension_name, (lo + d, hi + d), tuple(t.shifted(d) for t in part.terms))

        rb2 = RuleBase((shift(rb.inputs[0], dx),) + rb.inputs[1:], shift(rb.output, dy), rb.rules)
        obs2 = Observation((obs[0].shifted(dx),) + obs.sets[1:])
        base = interpolate(method, rb, obs)
        moved = interpolate(method, rb2, obs2)
        lv = np.linspace(0, 1, 11)
        bi, bs = base.cuts(lv)
        mi, ms = moved.cuts(lv)
        np.testing.assert_allclose(mi, bi + dy, atol=1e-7)
        np.testing.assert_allclose(ms, bs + dy, atol=1e-7)

    @pytest.mark.parametrize("ex", range(1, 8))
    @pytest.mark.parametrize("method", METHODS)
    def test_lambdas_in_unit_interval(self, ex, method):
        inst = build_example(ex, 42)
        w = interpolate(method, inst.rb, inst.obs).weights
        for name in ("lambda_core", "lambda_left", "lambda_right", "lambda_rep"):
            v = getattr(w, name)
            assert v is None or 0.0 <= v <= 1.0


def test_non_cnf_observation_rejected():
    with pytest.raises(NotCnf):
        interpolate("KH", sym_base(), Observation((make_set([(4, 0), (5, 0.5), (6, 0)]),)))


def test_unknown_method():
    with pytest.raises(ValueError):
        MethodId.parse("ZADEH")


def test_method_aliases():
    assert MethodId.parse("scale&move") is MethodId.SCALE_MOVE
    assert MethodId.parse("kh-stab") is MethodId.KH_STAB
