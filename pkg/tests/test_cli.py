import io
import json

import pytest

from frikit.analysis import ComparisonMatrix, MethodRow
from frikit.cli import main


def run(*argv, env=None, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(fixtures_dir):
    return str(fixtures_dir / "s1.fis"), str(fixtures_dir / "s1.obs")


class TestInfer:
    def test_symmetric_fixture(self, files):
        code, out, _ = run("infer", "--fis", files[0], "--obs", files[1], "--method", "KH")
        assert code == 0
        assert "0: 24 26" in out and "1: 25 25" in out
        assert "abnormal: false" in out

    def test_shape_method_prints_breakpoints(self, files):
        code, out, _ = run("infer", "--fis", files[0], "--obs", files[1], "--method", "maci")
        assert code == 0 and "breakpoints: (24, 0) (25, 1) (26, 0)" in out

    def test_outside_hull(self, files, fixtures_dir):
        code, _, err = run("infer", "--fis", files[0], "--obs", str(fixtures_dir / "outside.obs"), "--method", "KH")
        assert code == 1 and "NoFlankingRules" in err

    def test_json_error_on_stderr(self, files, fixtures_dir):
        code, out, err = run("infer", "--fis", files[0], "--obs", str(fixtures_dir / "outside.obs"),
                             "--method", "KH", "--out", "json")
        assert code == 1 and out == ""
        assert json.loads(err)["error"]["code"] == "NoFlankingRules"

    def test_json_round_trips(self, files):
        code, out, _ = run("infer", "--fis", files[0], "--obs", files[1], "--method", "VKK", "--out", "json")
        payload = json.loads(out)
        assert MethodRow.from_dict(payload).as_dict() == payload

    def test_csv(self, files):
        code, out, _ = run("infer", "--fis", files[0], "--obs", files[1], "--method", "KH", "--out", "csv")
        lines = out.splitlines()
        assert lines[1] == ",KH,ok,false,true,24,25,25,26"
        assert "alpha,inf,sup" in lines

    def test_pure_function_of_inputs(self, files):
        args = ("infer", "--fis", files[0], "--obs", files[1], "--method", "GM", "--levels", "5")
        assert run(*args) == run(*args)

    def test_levels_flag(self, files):
        _, out, _ = run("infer", "--fis", files[0], "--obs", files[1], "--method", "KH", "--levels", "3")
        assert "0.5: 24.5 25.5" in out

    def test_paper_literal_flag(self, files):
        _, out, _ = run("infer", "--fis", files[0], "--obs", files[1], "--method", "KH", "--paper-literal-kh")
        assert "printed" in out

    def test_method_all_is_compare(self, files):
        a = run("infer", "--fis", files[0], "--obs", files[1], "--method", "all")
        b = run("compare", "--fis", files[0], "--obs", files[1])
        assert a == b


class TestOtherCommands:
    def test_check_valid(self, files):
        code, out, _ = run("check", "--fis", files[0])
        assert code == 0 and out.strip().endswith("ok")

    def test_check_invalid(self, files, tmp_path):
        bad = tmp_path / "bad.fis"
        bad.write_text(open(files[0]).read().replace("[8 9 10]", "[0 1 2]"))
        code, out, _ = run("check", "--fis", str(bad), "--out", "json")
        assert code == 1 and json.loads(out)["ok"] is False

    def test_check_syntax_error(self, tmp_path):
        bad = tmp_path / "bad.fis"
        bad.write_text("[System]\nName='x'\nNumInputs=1\n[Bogus]\n")
        code, _, err = run("check", "--fis", str(bad))
        assert code == 1 and "line 4" in err

    def test_compare_matrix(self, files):
        code, out, _ = run("compare", "--fis", files[0], "--obs", files[1])
        assert code == 0 and len(out.splitlines()) == 11

    def test_compare_json(self, files):
        _, out, _ = run("compare", "--fis", files[0], "--obs", files[1], "--out", "json")
        payload = json.loads(out)
        assert ComparisonMatrix.from_dict(payload).as_dict() == payload

    def test_plot(self, files, tmp_path):
        svg = tmp_path / "p.svg"
        code, _, _ = run("plot", "--fis", files[0], "--obs", files[1], "--method", "KH", "--svg", str(svg))
        assert code == 0 and svg.read_text().count("<polyline") == 6

    def test_bench_small_budget(self, tmp_path, monkeypatch):
        monkeypatch.delenv("FRI_SEED", raising=False)
        code, out, _ = run("bench", "--suite", "table1", "--out", str(tmp_path), "--budget", "5")
        assert (tmp_path / "suite.csv").exists() and "artifacts written" in out
        assert code in (0, 1)


class TestErrors:
    def test_usage(self):
        assert run("infer", "--fis", "x")[0] == 2

    def test_unknown_method(self, files):
        assert run("infer", "--fis", files[0], "--obs", files[1], "--method", "ZZ")[0] == 2

    def test_no_command(self):
        assert run()[0] == 2

    def test_missing_file(self, files):
        code, _, err = run("infer", "--fis", "/nonexistent.fis", "--obs", files[1], "--method", "KH")
        assert code == 3 and "IOError" in err

    def test_bad_seed_env(self, tmp_path, monkeypatch):
        monkeypatch.setenv("FRI_SEED", "abc")
        assert run("bench", "--suite", "table1", "--out", str(tmp_path))[0] == 2
