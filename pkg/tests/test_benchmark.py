import re

import pytest

from frikit.benchmark.examples import SKELETONS, build_example, instance_at
from frikit.benchmark.search import (
    NotFound, SearchBudget, Target, committed_witnesses, find_witness, fires, search_witness, witness_key,
)
from frikit.benchmark.suite import SuiteReport, WitnessRecord, expected_abnormal, expected_linear, format_matrix, run_suite, write_artifacts
from frikit.benchmark.svg import render_svg
from frikit.conclusion import AlphaCut, Conclusion, MethodId
from frikit.methods import interpolate
from frikit.rulebase import validate_rulebase


def kinds(s):
    return "singleton" if s.is_singleton else {3: "triangular", 4: "trapezoidal"}[len(s.points)]


class TestExamples:
    @pytest.mark.parametrize("ex", sorted(SKELETONS))
    def test_matches_skeleton(self, ex):
        sk = SKELETONS[ex]
        inst = build_example(ex, 42)
        assert inst.rb.n_inputs == sk.dims
        assert all(len(p.terms) == sk.n_terms for p in inst.rb.inputs)
        assert {kinds(t) for p in inst.rb.inputs for t in p.terms} == {sk.antecedent}
        assert {kinds(t) for t in inst.rb.output.terms} == {sk.consequent}
        assert {kinds(s) for s in inst.obs.sets} == {sk.observation}
        assert validate_rulebase(inst.rb).ok

    def test_example_one(self):
        sk = SKELETONS[1]
        assert (sk.dims, sk.antecedent, sk.consequent, sk.observation, sk.n_terms) == \
            (1, "triangular", "triangular", "triangular", 2)

    def test_example_four(self):
        sk = SKELETONS[4]
        assert (sk.antecedent, sk.consequent, sk.observation, sk.n_terms) == \
            ("trapezoidal", "trapezoidal", "singleton", 4)

    def test_seed_determinism(self):
        a, b = build_example(6, 42), build_example(6, 42)
        assert a.rb == b.rb and a.obs == b.obs
        assert build_example(6, 43).rb != a.rb

    def test_unknown_id(self):
        with pytest.raises(ValueError):
            build_example(8)


class TestSearch:
    def test_target_parsing(self):
        t = Target.parse("abnormal( kh_stab )")
        assert t == Target("abnormal", MethodId.KH_STAB) and str(t) == "abnormal(KH_STAB)"
        with pytest.raises(ValueError):
            Target.parse("broken(KH)")

    def test_vkk_witness_in_example_three(self):
        inst = search_witness(3, "abnormal(VKK)", SearchBudget(200, 42))
        assert not isinstance(inst, NotFound) and fires(Target.parse("abnormal(VKK)"), inst)

    def test_kh_witness_in_example_six(self):
        inst = search_witness(6, "abnormal(KH)", SearchBudget(200, 42))
        assert not isinstance(inst, NotFound)

    def test_maci_stays_normal_on_reduced_budget(self):
        # the full 1e5 budget takes about half an hour; this scans a seeded prefix of the same stream
        out = search_witness(1, "abnormal(MACI)", SearchBudget(150, 42))
        assert isinstance(out, NotFound) and out.samples == 150
        assert len(out.log) == 150
        assert out.render_log().startswith("# search for abnormal(MACI) in example 1: not found")

    def test_search_is_reproducible(self):
        a = search_witness(1, "abnormal(MACI)", SearchBudget(30, 5))
        b = search_witness(1, "abnormal(MACI)", SearchBudget(30, 5))
        assert a.log == b.log

    def test_stream_is_seeded(self):
        a, b = instance_at(6, 42, 3), instance_at(6, 42, 3)
        assert (a is None and b is None) or a.rb == b.rb

    def test_committed_witnesses_replay(self):
        table = committed_witnesses()
        key = witness_key(6, Target.parse("abnormal(KH)"), 42)
        it = table[key]["iteration"]
        inst = find_witness(6, Target.parse("abnormal(KH)"), SearchBudget(100_000, 42))
        assert inst.iteration == it and inst.provenance == "searched"


class TestExpectations:
    def test_robust_methods_expected_normal(self):
        for ex in SKELETONS:
            for m in ("MACI", "IMUL", "CRF", "GM", "SCALE_MOVE"):
                assert expected_abnormal(ex, MethodId.parse(m)) is False
                assert expected_linear(ex, MethodId.parse(m)) is True

    def test_targets(self):
        assert expected_abnormal(3, MethodId.VKK) is True
        assert expected_abnormal(7, MethodId.KH) is True
        assert expected_linear(6, MethodId.FRIPOC) is False
        assert expected_abnormal(1, MethodId.KH) is None


class TestSuite:
    def test_empty_method_list(self):
        rep = run_suite(methods=[])
        assert rep.cells == [] and rep.mismatches == []

    def test_kh_column(self):
        rep = run_suite(methods=["KH", "MACI"], budget=SearchBudget(200, 42))
        assert rep.mismatches == []
        assert rep.cell(1, "KH").abnormal is False and rep.cell(2, "KH").abnormal is False
        assert rep.cell(6, "KH").abnormal and rep.cell(7, "KH").abnormal
        assert not any(rep.cell(ex, "MACI").abnormal for ex in SKELETONS)
        assert "example" in format_matrix(rep).splitlines()[0]

    def test_artifacts_are_deterministic(self, tmp_path):
        rep = run_suite(methods=["VKK", "GM"], budget=SearchBudget(200, 42))
        a = write_artifacts(rep, tmp_path / "a")
        b = write_artifacts(run_suite(methods=["VKK", "GM"], budget=SearchBudget(200, 42)), tmp_path / "b")
        assert [p.relative_to(tmp_path / "a") for p in a] == [p.relative_to(tmp_path / "b") for p in b]
        for pa, pb in zip(a, b):
            assert pa.read_bytes() == pb.read_bytes()
        assert (tmp_path / "a" / "witnesses" / "ex3_abnormal_VKK" / "rulebase.fis").exists()
        assert (tmp_path / "a" / "figures" / "example3_VKK.svg").exists()

    def test_not_found_writes_search_log(self, tmp_path):
        target = Target.parse("abnormal(MACI)")
        miss = search_witness(1, target, SearchBudget(3, 42))
        rep = SuiteReport(witnesses=[WitnessRecord(1, target, None, miss)])
        write_artifacts(rep, tmp_path)
        log = (tmp_path / "witnesses" / "ex1_abnormal_MACI" / "search.log").read_text()
        assert log.splitlines()[0].endswith("not found after 3 samples (seed 42)")
        assert rep.summary()["witnesses"][0]["found"] is False


class TestSvg:
    def test_symmetric_fixture_element_count(self, s1):
        svg = render_svg(s1, [interpolate("KH", *s1)])
        assert len(re.findall(r"<polyline", svg)) == 6
        assert svg.count('class="conclusion KH"') == 1

    def test_byte_identical(self, s1, tmp_path):
        c = [interpolate("GM", *s1)]
        render_svg(s1, c, tmp_path / "a.svg")
        render_svg(s1, c, tmp_path / "b.svg")
        assert (tmp_path / "a.svg").read_bytes() == (tmp_path / "b.svg").read_bytes()

    def test_inversion_is_marked(self, s1):
        fam = (AlphaCut(0, 20, 30), AlphaCut(0.5, 27, 26), AlphaCut(1, 26.5, 26.5))
        svg = render_svg(s1, {"KH": Conclusion(MethodId.KH, alpha_family=fam)})
        assert svg.count('class="inversion"') == 1
        assert "inversion at alpha=0.5" in svg
