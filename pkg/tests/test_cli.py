import json

import numpy as np
import pytest

from ensemble_lens.cli import main


def run_cli(*argv):
    return main(list(argv))


def read_lines(path):
    return path.read_text().splitlines()


@pytest.fixture
def oscillating_dir(tmp_path):
    out = tmp_path / "osc"
    assert run_cli("generate", "oscillating-tangents", "--n", "60",
                   "--seed", "42", "--out", str(out)) == 0
    return out


@pytest.fixture
def campbell_dir(tmp_path):
    out = tmp_path / "cam"
    assert run_cli("generate", "campbell1d", "--n", "60",
                   "--seed", "123", "--out", str(out)) == 0
    return out


class TestParser:
    def test_port_env_fallback(self, monkeypatch):
        from ensemble_lens.cli import build_parser

        monkeypatch.setenv("ENSEMBLE_LENS_PORT", "9123")
        args = build_parser().parse_args(["serve", "--manifest", "m.json"])
        assert args.port == 9123
        monkeypatch.delenv("ENSEMBLE_LENS_PORT")
        args = build_parser().parse_args(["serve", "--manifest", "m.json"])
        assert args.port == 8000

    def test_version_flag(self, capsys):
        assert run_cli("--version") == 0

    def test_missing_subcommand_exit_2(self, capsys):
        assert run_cli() == 2


class TestGenerate:
    def test_writes_triplet(self, tmp_path):
        out = tmp_path / "d"
        assert run_cli("generate", "oscillating-tangents", "--n", "400",
                       "--seed", "42", "--out", str(out)) == 0
        assert (out / "manifest.json").is_file()
        assert (out / "params.csv").is_file()
        assert len(read_lines(out / "curves.csv")) == 401  # header + 400 rows

    def test_campbell_row_width(self, tmp_path):
        out = tmp_path / "d"
        assert run_cli("generate", "campbell1d", "--n", "10",
                       "--seed", "7", "--out", str(out)) == 0
        rows = read_lines(out / "curves.csv")
        assert all(len(r.split(",")) == 181 for r in rows)

    def test_too_few_members_exit_2(self, tmp_path):
        assert run_cli("generate", "campbell1d", "--n", "2",
                       "--out", str(tmp_path / "x")) == 2

    def test_unknown_kind_exit_2(self, tmp_path, capsys):
        code = run_cli("generate", "sine", "--out", str(tmp_path / "x"))
        assert code == 2

    def test_unwritable_directory_exit_3(self, tmp_path):
        target = tmp_path / "file"
        target.write_text("occupied")
        assert run_cli("generate", "campbell1d", "--n", "5",
                       "--out", str(target)) == 3


class TestAnalyze:
    def test_writes_document(self, oscillating_dir, tmp_path):
        out = tmp_path / "analysis.json"
        code = run_cli("analyze", "--manifest", str(oscillating_dir / "manifest.json"),
                       "--out", str(out))
        assert code == 0
        doc = json.loads(out.read_text())
        assert doc["explained_variance"] >= 1.0 - 1e-9
        assert doc["config"]["outer_coverage"] == 0.95

    def test_byte_identical_reruns(self, campbell_dir, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        manifest = str(campbell_dir / "manifest.json")
        assert run_cli("analyze", "--manifest", manifest, "--out", str(a)) == 0
        assert run_cli("analyze", "--manifest", manifest, "--out", str(b)) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_svg_render(self, campbell_dir, tmp_path):
        out = tmp_path / "analysis.json"
        svg = tmp_path / "boxplot.svg"
        code = run_cli("analyze", "--manifest", str(campbell_dir / "manifest.json"),
                       "--out", str(out), "--svg", str(svg))
        assert code == 0
        assert svg.read_text().startswith("<?xml")

    def test_invalid_outer_exit_2(self, campbell_dir, tmp_path):
        code = run_cli("analyze", "--manifest", str(campbell_dir / "manifest.json"),
                       "--outer", "0.5", "--out", str(tmp_path / "a.json"))
        assert code == 2

    def test_bad_grid_exit_2(self, campbell_dir, tmp_path):
        code = run_cli("analyze", "--manifest", str(campbell_dir / "manifest.json"),
                       "--grid", "100", "--out", str(tmp_path / "a.json"))
        assert code == 2

    def test_missing_manifest_exit_2(self, tmp_path):
        assert run_cli("analyze", "--manifest", str(tmp_path / "none.json")) == 2

    def test_degenerate_ensemble_exit_4(self, tmp_path):
        (tmp_path / "params.csv").write_text("p\n1\n2\n3\n")
        (tmp_path / "curves.csv").write_text("0,1\n5,5\n5,5\n5,5\n")
        manifest = tmp_path / "manifest.json"
        manifest.write_text(json.dumps(
            {"name": "flat", "params": "params.csv", "curves": "curves.csv"}
        ))
        assert run_cli("analyze", "--manifest", str(manifest),
                       "--out", str(tmp_path / "a.json")) == 4

    def test_validation_failure_exit_5(self, tmp_path, capsys):
        (tmp_path / "params.csv").write_text("p,p\n1,1\n2,2\n3,3\n")
        (tmp_path / "curves.csv").write_text("0,1\n1,2\n3,4\n5,6\n")
        manifest = tmp_path / "manifest.json"
        manifest.write_text(json.dumps(
            {"name": "dup", "params": "params.csv", "curves": "curves.csv"}
        ))
        assert run_cli("analyze", "--manifest", str(manifest),
                       "--out", str(tmp_path / "a.json")) == 5
        assert "validation report" in capsys.readouterr().err


class TestSensitivity:
    @pytest.fixture
    def analyzed(self, campbell_dir, tmp_path):
        out = tmp_path / "analysis.json"
        assert run_cli("analyze", "--manifest", str(campbell_dir / "manifest.json"),
                       "--out", str(out)) == 0
        return campbell_dir / "manifest.json", out

    def write_selection(self, tmp_path, steps):
        path = tmp_path / "selection.json"
        path.write_text(json.dumps({"predicates": steps}))
        return path

    def test_band_tail_report(self, analyzed, tmp_path, capsys):
        manifest, analysis = analyzed
        selection = self.write_selection(tmp_path, [{
            "predicate": {"kind": "band_tail", "side": "upper",
                          "coverage": 0.95, "at": 180},
            "mode": "intersect",
        }])
        report_path = tmp_path / "sensitivity.json"
        code = run_cli("sensitivity", "--manifest", str(manifest),
                       "--analysis", str(analysis), "--selection", str(selection),
                       "--out", str(report_path))
        assert code == 0
        out = capsys.readouterr().out
        assert "parameter" in out and "rank" in out
        payload = json.loads(report_path.read_text())
        assert set(payload["scores"]) == {"X1", "X2", "X3", "X4"}
        assert payload["selection"]["size"] >= 3
        assert payload["ranking"][0] in ("X1", "X2")

    def test_all_members_scores_zero(self, analyzed, tmp_path):
        manifest, analysis = analyzed
        selection = self.write_selection(tmp_path, [])
        report_path = tmp_path / "s.json"
        assert run_cli("sensitivity", "--manifest", str(manifest),
                       "--analysis", str(analysis), "--selection", str(selection),
                       "--out", str(report_path)) == 0
        payload = json.loads(report_path.read_text())
        assert all(abs(s) < 1e-12 for s in payload["scores"].values())

    def test_unknown_param_exit_2(self, analyzed, tmp_path):
        manifest, analysis = analyzed
        selection = self.write_selection(tmp_path, [{
            "predicate": {"kind": "param_range", "param": "nope", "lo": 0, "hi": 1},
            "mode": "intersect",
        }])
        assert run_cli("sensitivity", "--manifest", str(manifest),
                       "--analysis", str(analysis), "--selection", str(selection),
                       "--out", str(tmp_path / "s.json")) == 2

    def test_small_selection_exit_6(self, analyzed, tmp_path):
        manifest, analysis = analyzed
        selection = self.write_selection(tmp_path, [{
            "predicate": {"kind": "time_box", "t_lo": -90, "t_hi": 90,
                          "v_lo": -1e9, "v_hi": -1e8},
            "mode": "intersect",
        }])
        assert run_cli("sensitivity", "--manifest", str(manifest),
                       "--analysis", str(analysis), "--selection", str(selection),
                       "--out", str(tmp_path / "s.json")) == 6

    def test_hash_mismatch_exit_2(self, analyzed, tmp_path, oscillating_dir):
        _, analysis = analyzed
        selection = self.write_selection(tmp_path, [])
        assert run_cli("sensitivity",
                       "--manifest", str(oscillating_dir / "manifest.json"),
                       "--analysis", str(analysis), "--selection", str(selection),
                       "--out", str(tmp_path / "s.json")) == 2
