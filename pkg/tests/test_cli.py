"""End-to-end command-line behavior through in-process main() calls."""

from __future__ import annotations

import json
import math

import pytest

from overlapkit.cli import main
from overlapkit.intpoly import IntPoly, PartitionStat, SearchReport, SearchStrategy


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


class TestDimension:
    def test_json_output(self, capsys):
        data = run_json(capsys, "dimension", "--lambda", "1/4", "--n", "3", "--m", "1")
        assert data["n"] == 3 and data["m"] == 1
        assert data["lambda"] == "1/4"
        assert data["s"].startswith("0.694241913630617")
        assert data["beta"] == {"a": "3/2", "b": "1/2", "D": 5}
        assert data["precision_bits"] == 128

    def test_text_format_carries_identical_values(self, capsys):
        data = run_json(capsys, "dimension", "--lambda", "1/4", "--n", "3", "--m", "1")
        code, out, err = run(
            capsys, "dimension", "--lambda", "1/4", "--n", "3", "--m", "1", "--format", "text"
        )
        assert code == 0
        lines = dict(line.split(" = ", 1) for line in out.strip().splitlines())
        assert lines["s"] == data["s"]
        assert lines["beta.a"] == "3/2"
        assert lines["n"] == "3"

    def test_precision_flag_extends_digits(self, capsys):
        wide = run_json(
            capsys,
            "dimension", "--lambda", "1/4", "--n", "3", "--m", "1",
            "--precision-bits", "256",
        )
        assert wide["precision_bits"] == 256
        assert len(wide["s"]) > 60
        assert wide["s"].startswith("0.69424191363061730173879026689859522346")

    def test_precision_env_fallback(self, capsys, monkeypatch):
        monkeypatch.setenv("OVERLAPKIT_PRECISION_BITS", "192")
        data = run_json(capsys, "dimension", "--lambda", "1/4", "--n", "3", "--m", "1")
        assert data["precision_bits"] == 192

    def test_flag_beats_env(self, capsys, monkeypatch):
        monkeypatch.setenv("OVERLAPKIT_PRECISION_BITS", "192")
        data = run_json(
            capsys,
            "dimension", "--lambda", "1/4", "--n", "3", "--m", "1",
            "--precision-bits", "96",
        )
        assert data["precision_bits"] == 96

    def test_bad_env_is_an_input_error(self, capsys, monkeypatch):
        monkeypatch.setenv("OVERLAPKIT_PRECISION_BITS", "lots")
        code, out, err = run(capsys, "dimension", "--lambda", "1/4", "--n", "3", "--m", "1")
        assert code == 1
        assert json.loads(err)["error"] == "InvalidArgument"

    def test_infeasible_ratio_exits_1(self, capsys):
        code, out, err = run(capsys, "dimension", "--lambda", "2/5", "--n", "3", "--m", "1")
        assert code == 1
        payload = json.loads(err)
        assert payload["error"] == "Infeasible"
        assert "bound" in payload["details"]


class TestValidateAndGenerate:
    def test_validate_golden(self, capsys):
        data = run_json(capsys, "validate", "--lambda", "1/4", "--b", "0,3/16,3/4")
        assert data["pattern"] == "OG"
        assert data["n"] == 3 and data["m"] == 1
        assert data["steps"][0] == {"kind": "O", "size": "3/16"}

    def test_validate_rejects_bad_step(self, capsys):
        code, out, err = run(capsys, "validate", "--lambda", "1/4", "--b", "0,1/8,3/4")
        assert code == 1
        payload = json.loads(err)
        assert payload["error"] == "InvalidStep"
        assert payload["details"]["index"] == 1

    def test_generate_explicit_pattern(self, capsys):
        data = run_json(
            capsys, "generate", "--n", "4", "--m", "1", "--lambda", "1/5", "--pattern", "OTG"
        )
        assert data["pattern"] == "OTG"
        assert data["offsets"] == ["0", "4/25", "9/25", "4/5"]

    def test_generate_seeded_is_deterministic(self, capsys):
        a = run_json(capsys, "generate", "--n", "5", "--m", "2", "--lambda", "1/9", "--seed", "7")
        b = run_json(capsys, "generate", "--n", "5", "--m", "2", "--lambda", "1/9", "--seed", "7")
        c = run_json(capsys, "generate", "--n", "5", "--m", "2", "--lambda", "1/9", "--seed", "8")
        assert a == b
        assert a != c

    def test_generate_infeasible_pattern(self, capsys):
        code, out, err = run(
            capsys, "generate", "--n", "3", "--m", "1", "--lambda", "1/4", "--pattern", "OT"
        )
        assert code == 1
        assert json.loads(err)["error"] == "Infeasible"


class TestGraph:
    def test_golden_graph_with_spectral_check(self, capsys):
        data = run_json(capsys, "graph", "--lambda", "1/4", "--b", "0,3/16,3/4")
        assert data["policy"] == "cut-touch"
        assert data["adjacency"] == [[1, 1], [1, 2]]
        assert data["spectral"]["exact_beta_eigen"] is True
        assert abs(float(data["spectral"]["rho"]) - (3 + math.sqrt(5)) / 2) < 1e-10

    def test_keep_touch_policy(self, capsys):
        data = run_json(
            capsys,
            "graph", "--lambda", "1/5", "--b", "0,4/25,9/25,4/5", "--policy", "keep-touch",
        )
        assert data["adjacency"] == [[1, 1, 0], [1, 2, 1], [1, 2, 2]]
        assert [v["steps"] for v in data["vertices"]] == ["", "OT", "TOT"]

    def test_dot_file(self, capsys, tmp_path):
        dot = tmp_path / "graph.dot"
        data = run_json(
            capsys, "graph", "--lambda", "1/4", "--b", "0,3/16,3/4", "--dot", str(dot)
        )
        assert data["dot"] == str(dot)
        text = dot.read_text()
        assert text.startswith("digraph")
        assert 'label="2"' in text  # the O -> O edge has multiplicity 2


class TestFactorAndObstruct:
    def test_factor_golden(self, capsys):
        data = run_json(capsys, "factor", "--poly", "x^4-3*x^2+1")
        assert data == {
            "content": 1,
            "factors": ["x^2-x-1", "x^2+x-1"],
            "input": "x^4-3*x^2+1",
            "irreducible": False,
            "unit": 1,
        }

    def test_factor_irreducible_and_multiplicity(self, capsys):
        assert run_json(capsys, "factor", "--poly", "x^2-x-1")["irreducible"] is True
        data = run_json(capsys, "factor", "--poly", "(x+1)^2(x-1)")
        assert data["factors"] == ["x-1", "x+1", "x+1"]

    def test_factor_syntax_error(self, capsys):
        code, out, err = run(capsys, "factor", "--poly", "x^")
        assert code == 1
        payload = json.loads(err)
        assert payload["error"] == "PolySyntaxError"
        assert "position" in payload["details"]

    def test_obstruct_verdicts(self, capsys):
        met = run_json(capsys, "obstruct", "--n", "3", "--m", "1")
        assert met["verdict"] == "NecessaryConditionMet"
        assert [r["k"] for r in met["reducible_ks"]] == [2, 4, 6, 8]
        blocked = run_json(capsys, "obstruct", "--n", "4", "--m", "2")
        assert blocked["verdict"] == "Obstructed"
        open_ = run_json(capsys, "obstruct", "--n", "6", "--m", "4")
        assert open_["verdict"] == "NecessaryConditionOpen"

    def test_obstruct_sweep(self, capsys):
        data = run_json(capsys, "obstruct-sweep", "--nmax", "6", "--kmax", "4")
        assert data["nmax"] == 6 and data["kmax"] == 4
        assert len(data["reports"]) == 10  # (3,1),(4,1..2),(5,1..3),(6,1..4)
        keyed = {(r["n"], r["m"]): r["verdict"] for r in data["reports"]}
        assert keyed[(3, 1)] == "NecessaryConditionMet"
        assert keyed[(6, 2)] == "Obstructed"

    def test_out_of_class_exits_1(self, capsys):
        code, out, err = run(capsys, "obstruct", "--n", "3", "--m", "2")
        assert code == 1
        assert json.loads(err)["error"] == "OutOfClass"


class TestDustCheckAndMoran:
    def test_dust_check_not_ruled_out(self, capsys):
        data = run_json(
            capsys,
            "dust-check", "--n", "3", "--m", "1", "--lambda", "1/4",
            "--exponents", "1,1/2",
        )
        assert data["conclusion"] == "NotRuledOut"
        assert data["gcd"] == "x^2-x-1"
        assert data["exponents"] == [1, 2]

    def test_dust_check_explicit_base(self, capsys):
        data = run_json(
            capsys,
            "dust-check", "--n", "3", "--m", "1", "--lambda", "1/4",
            "--exponents", "2,1", "--base", "1/2",
        )
        assert data["conclusion"] == "NotRuledOut"
        assert data["k"] == 2

    def test_dust_check_ruled_out_reasons(self, capsys):
        mismatch = run_json(
            capsys,
            "dust-check", "--n", "3", "--m", "1", "--lambda", "1/4",
            "--ratios", "1/4,1/4,1/4",
        )
        assert mismatch["reason"] == "DimensionMismatch"
        incomm = run_json(
            capsys,
            "dust-check", "--n", "3", "--m", "1", "--lambda", "1/4",
            "--ratios", "1/4,1/3",
        )
        assert incomm["reason"] == "IncommensurableRatios"
        assert incomm["gcd"] is None

    def test_dust_check_requires_one_form(self, capsys):
        code, out, err = run(
            capsys,
            "dust-check", "--n", "3", "--m", "1", "--lambda", "1/4",
            "--ratios", "1/4,1/2", "--exponents", "1,2",
        )
        assert code == 1
        assert json.loads(err)["error"] == "InvalidArgument"

    def test_moran_ratios(self, capsys):
        data = run_json(capsys, "moran", "--ratios", "1/3,1/3")
        assert abs(float(data["s"]) - math.log(2) / math.log(3)) < 1e-10
        assert data["dust"] == {"ratios": ["1/3", "1/3"]}
        assert data["iterations"] > 0

    def test_moran_exponents_need_base(self, capsys):
        code, out, err = run(capsys, "moran", "--exponents", "1,2")
        assert code == 1
        assert json.loads(err)["error"] == "InvalidArgument"
        data = run_json(capsys, "moran", "--exponents", "1,2", "--base", "1/2")
        # 2^-s + 4^-s = 1 at the golden-ratio exponent
        assert abs(float(data["s"]) - math.log((1 + math.sqrt(5)) / 2) / math.log(2)) < 1e-10

    def test_moran_agrees_with_dimension(self, capsys):
        moran = run_json(capsys, "moran", "--exponents", "1,1/2", "--base", "1/4")
        dim = run_json(capsys, "dimension", "--lambda", "1/4", "--n", "3", "--m", "1")
        assert abs(float(moran["s"]) - float(dim["s"])) < 1e-9


class TestTailSearch:
    def test_empty_search_exits_0(self, capsys):
        code, out, err = run(
            capsys,
            "tail-search", "--q", "1", "--n", "3", "--m", "1",
            "--max-degree", "6", "--coeff-bound", "4",
        )
        assert code == 0
        data = json.loads(out)
        assert data["counterexamples"] == []
        assert data["candidates_tested"] > 0
        assert [p["degree"] for p in data["partitions"]] == [2, 3, 4, 5, 6]

    def test_strategy_flag(self, capsys):
        data = run_json(
            capsys,
            "tail-search", "--q", "1", "--n", "4", "--m", "2",
            "--max-degree", "4", "--coeff-bound", "2", "--strategy", "dividend",
        )
        assert data["strategy"] == "dividend"

    def test_counterexamples_exit_3(self, capsys, monkeypatch):
        # no in-class counterexample exists, so force one through the seam to
        # check the wiring surfaces it loudly
        hit = IntPoly([-1, 0, 0, 0, -1, 1])
        fake = SearchReport(
            q=1, n=3, m=1, max_degree=5, coeff_bound=1,
            strategy=SearchStrategy.QUOTIENT,
            counterexamples=(hit,),
            candidates_tested=9,
            partitions=(PartitionStat(degree=5, candidates=9, hits=1),),
        )
        monkeypatch.setattr("overlapkit.cli.nonneg_tail_search", lambda *a, **k: fake)
        code, out, err = run(
            capsys,
            "tail-search", "--q", "1", "--n", "3", "--m", "1",
            "--max-degree", "5", "--coeff-bound", "1",
        )
        assert code == 3
        assert json.loads(out)["counterexamples"] == ["x^5-x^4-1"]


class TestRenderGrowthBoxdim:
    def test_render_writes_svg_and_csv(self, capsys, tmp_path):
        svg = tmp_path / "cover.svg"
        csv_path = tmp_path / "cover.csv"
        data = run_json(
            capsys,
            "render", "--lambda", "1/4", "--b", "0,3/16,3/4",
            "--depth", "2", "--svg", str(svg), "--csv", str(csv_path),
        )
        assert data["counts"] == [1, 3, 8]
        svg_text = svg.read_text()
        assert svg_text.count("<rect ") == 12
        csv_lines = csv_path.read_text().splitlines()
        assert csv_lines[0] == "depth,offset,length"
        assert csv_lines[1] == "0,0,1"
        assert len(csv_lines) == 1 + 1 + 3 + 8

    def test_growth_with_csv(self, capsys, tmp_path):
        csv_path = tmp_path / "growth.csv"
        data = run_json(
            capsys,
            "growth", "--lambda", "1/4", "--b", "0,3/16,3/4",
            "--depth", "4", "--csv", str(csv_path),
        )
        assert data["counts"] == [1, 3, 8, 21, 55]
        assert data["recurrence_ok"] is True
        assert csv_path.read_text() == "L,N_L\n0,1\n1,3\n2,8\n3,21\n4,55\n"

    def test_growth_depth_ceiling_exits_2(self, capsys):
        code, out, err = run(
            capsys, "growth", "--lambda", "1/4", "--b", "0,3/16,3/4", "--depth", "99"
        )
        assert code == 2
        assert json.loads(err)["error"] == "TooDeep"

    def test_boxdim_cantor(self, capsys):
        data = run_json(
            capsys, "boxdim", "--lambda", "1/3", "--b", "0,2/3", "--depth", "8",
            "--grid-levels", "4",
        )
        assert abs(float(data["estimate"]) - math.log(2) / math.log(3)) < 1e-9
        assert len(data["scales"]) == 4


class TestHarness:
    def test_output_file_replaces_stdout(self, capsys, tmp_path):
        path = tmp_path / "out.json"
        code, out, err = run(
            capsys,
            "dimension", "--lambda", "1/4", "--n", "3", "--m", "1", "--output", str(path),
        )
        assert code == 0
        assert out == ""
        assert json.loads(path.read_text())["n"] == 3

    def test_reruns_are_byte_identical(self, capsys):
        argv = ["obstruct-sweep", "--nmax", "8"]
        code1 = main(argv)
        first = capsys.readouterr().out
        code2 = main(argv)
        second = capsys.readouterr().out
        assert code1 == code2 == 0
        assert first == second

    def test_json_keys_are_sorted(self, capsys):
        code, out, err = run(capsys, "dimension", "--lambda", "1/4", "--n", "3", "--m", "1")
        data = json.loads(out)
        assert list(data) == sorted(data)

    def test_unknown_subcommand_exits_1(self, capsys):
        code, out, err = run(capsys, "no-such-command")
        assert code == 1
        assert json.loads(err)["error"] == "InvalidArgument"

    def test_missing_required_flag_exits_1(self, capsys):
        code, out, err = run(capsys, "dimension", "--lambda", "1/4", "--n", "3")
        assert code == 1
        assert json.loads(err)["error"] == "InvalidArgument"

    def test_bad_rational_exits_1(self, capsys):
        code, out, err = run(capsys, "dimension", "--lambda", "0.25", "--n", "3", "--m", "1")
        assert code == 1
        assert json.loads(err)["error"] == "InvalidArgument"
