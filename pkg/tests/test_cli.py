import json

import pytest

from hyperreg import cli
from hyperreg.corpus import CORPUS, CorpusEntry, Expectation, verify_corpus


@pytest.fixture
def triangle_file(tmp_path):
    path = tmp_path / "triangle.ideal"
    path.write_text("a b\na c\nb c\n")
    return str(path)


@pytest.fixture
def saturated_file(tmp_path):
    path = tmp_path / "saturated.ideal"
    path.write_text("e f h k\na e f g i j\nb c h i j\nd g h i j\n")
    return str(path)


class TestAnalyze:
    def test_text_report(self, capsys, saturated_file):
        assert cli.main(["analyze", saturated_file]) == 0
        out = capsys.readouterr().out
        assert "reg=7" in out and "pd=4" in out
        assert "saturated_formula: 7" in out
        assert "saturated_formula: tight" in out

    def test_triangle_slack(self, capsys, triangle_file):
        assert cli.main(["analyze", triangle_file]) == 0
        out = capsys.readouterr().out
        assert "fill_bound: 2" in out
        assert "reg=1" in out
        assert "fill_bound: slack 1" in out

    def test_json_report(self, capsys, triangle_file):
        assert cli.main(["analyze", triangle_file, "--json", "--field", "3"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["oracle"]["reg"] == 1
        assert doc["oracle"]["field"] == 3
        assert doc["best_upper"] == {"id": "taylor_bound", "value": 1}
        assert doc["hypergraph_detail"]["vertices"] == [1, 2, 3]

    def test_no_oracle(self, capsys, triangle_file):
        assert cli.main(["analyze", triangle_file, "--no-oracle"]) == 0
        out = capsys.readouterr().out
        assert "oracle" not in out and "bounds:" in out

    def test_missing_file(self, capsys):
        assert cli.main(["analyze", "/nonexistent.ideal"]) == 1
        assert "error" in capsys.readouterr().err

    def test_bad_syntax(self, capsys, tmp_path):
        path = tmp_path / "bad.ideal"
        path.write_text("a a b\n")
        assert cli.main(["analyze", str(path)]) == 1
        assert "square-free" in capsys.readouterr().err

    def test_empty_file(self, capsys, tmp_path):
        path = tmp_path / "empty.ideal"
        path.write_text("")
        assert cli.main(["analyze", str(path)]) == 1

    def test_bad_field(self, capsys, triangle_file):
        assert cli.main(["analyze", triangle_file, "--field", "4"]) == 1

    def test_oracle_cap_degrades_to_bounds(self, capsys, tmp_path):
        path = tmp_path / "big.ideal"
        path.write_text("\n".join("abcdefghijklmnopqrstu"))  # 21 generators
        assert cli.main(["analyze", str(path)]) == 0
        captured = capsys.readouterr()
        assert "warning: oracle skipped" in captured.err
        assert "fill_bound" in captured.out
        assert "reg=" not in captured.out


class TestVerifyPaper:
    def test_passes_with_one_flagged_discrepancy(self, capsys):
        assert cli.main(["verify-paper"]) == 0
        out = capsys.readouterr().out
        assert "1 flagged" in out
        assert "[flagged] all-cubics-on-four :: fill_bound" in out
        assert "[FAIL]" not in out

    def test_json_mode(self, capsys):
        assert cli.main(["verify-paper", "--json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["failures"] == 0
        assert doc["flagged"] == 1

    def test_perturbed_expectation_fails(self, capsys, monkeypatch):
        bad = CorpusEntry(
            "perturbed", CORPUS[0].ideal_text,
            (("reg", Expectation(3, "trivial")),))
        monkeypatch.setattr(cli, "CORPUS", (bad,))
        assert cli.main(["verify-paper"]) == 2
        assert "expected 3, got 1" in capsys.readouterr().out

    def test_perturbed_corpus_api_reports_diff(self):
        bad = CorpusEntry(
            "perturbed", CORPUS[0].ideal_text,
            (("reg", Expectation(3, "trivial")),))
        report = verify_corpus(entries=(bad,), primes=(2,))
        assert not report.ok
        assert report.failures[0].expected == 3
        assert report.failures[0].actual == 1


class TestRandom:
    ARGS = ["random", "--vars", "6", "--gens", "4", "--count", "5", "--seed", "7"]

    def test_deterministic_output(self, capsys):
        assert cli.main(self.ARGS) == 0
        first = capsys.readouterr().out
        assert cli.main(self.ARGS) == 0
        assert capsys.readouterr().out == first
        assert "aggregate over 5 instances" in first

    def test_json_lines(self, capsys):
        assert cli.main(self.ARGS + ["--json"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        records = [json.loads(line) for line in lines]
        assert [r["instance"] for r in records[:-1]] == list(range(5))
        assert "aggregate" in records[-1]
        for r in records[:-1]:
            assert r["reg"] <= r["best_upper"]["value"]

    def test_infeasible_parameters(self, capsys):
        assert cli.main(["random", "--vars", "3", "--gens", "9",
                         "--count", "1", "--seed", "1"]) == 1
        assert "antichain" in capsys.readouterr().err

    def test_oracle_cap_exit_code(self, capsys):
        assert cli.main(["random", "--vars", "15", "--gens", "4",
                         "--count", "1", "--seed", "1"]) == 3

    def test_no_oracle_lifts_cap(self, capsys):
        assert cli.main(["random", "--vars", "15", "--gens", "4", "--count", "2",
                         "--seed", "1", "--no-oracle"]) == 0
        out = capsys.readouterr().out
        assert "reg=" not in out


class TestRender:
    def test_dot_to_stdout(self, capsys, saturated_file):
        assert cli.main(["render", saturated_file, "--format", "dot"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("graph hypergraph {")
        assert out.count("shape=point") == 2

    def test_dot_to_file(self, tmp_path, saturated_file):
        out_path = tmp_path / "graph.dot"
        assert cli.main(["render", saturated_file, "--format", "dot",
                         "--out", str(out_path)]) == 0
        assert out_path.read_text().startswith("graph hypergraph {")

    def test_tikz(self, capsys, triangle_file):
        assert cli.main(["render", triangle_file, "--format", "tikz"]) == 0
        assert "tikzpicture" in capsys.readouterr().out

    def test_unsupported_format(self, capsys, triangle_file):
        with pytest.raises(SystemExit) as exc:
            cli.main(["render", triangle_file, "--format", "svg"])
        assert exc.value.code == 1

    def test_missing_file(self, capsys):
        assert cli.main(["render", "/nonexistent.ideal", "--format", "dot"]) == 1
