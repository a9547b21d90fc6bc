import json
import subprocess
import sys

import pytest

from gmtauber.cli import main


def run_cli(*argv) -> int:
    return main(list(argv))


def load(path) -> dict:
    return json.loads(path.read_text())


class TestAnalyze:
    def test_oscillating_with_alternating_weights(self, tmp_path):
        out = tmp_path / "r.json"
        code = run_cli(
            "analyze",
            "--generator", "ex2",
            "--weights", "alternating:2,1",
            "--n-max", "2000",
            "--no-timestamp",
            "--out", str(out),
        )
        assert code == 0
        doc = load(out)
        assert doc["schema_version"] == 1
        assert doc["analysis"]["limit_estimate"]["value"] == pytest.approx(
            2.0 ** (1.0 / 3.0), abs=5e-4
        )
        assert doc["analysis"]["gbar"]["passed"] is True
        assert doc["weights"]["sva"]["verdict"] is True

    def test_infinite_estimates_serialize(self, tmp_path):
        out = tmp_path / "r.json"
        code = run_cli(
            "analyze",
            "--generator", "ex1",
            "--weights", "harmonic",
            "--n-max", "2000",
            "--tol", "1.5",
            "--no-timestamp",
            "--out", str(out),
        )
        assert code == 0
        doc = load(out)
        assert doc["analysis"]["tauber"]["con1_estimate"] == "inf"
        assert doc["analysis"]["tauber"]["recovery_verdict"] is False

    def test_determinism(self, tmp_path):
        out = tmp_path / "same.json"
        args = [
            "analyze",
            "--generator", "ex2",
            "--weights", "ones",
            "--n-max", "500",
            "--no-timestamp",
            "--out", str(out),
        ]
        assert run_cli(*args) == 0
        first = out.read_bytes()
        assert run_cli(*args) == 0
        assert out.read_bytes() == first

    def test_timestamp_present_by_default(self, tmp_path):
        out = tmp_path / "r.json"
        assert run_cli(
            "analyze", "--generator", "ex2", "--n-max", "200", "--out", str(out)
        ) == 0
        assert "generated_at" in load(out)

    def test_round_trip_matches_fused_path(self, tmp_path):
        seq_file = tmp_path / "seq.txt"
        assert run_cli(
            "generate", "--generator", "ex2", "--n-max", "400", "--out", str(seq_file)
        ) == 0
        fused, refed = tmp_path / "fused.json", tmp_path / "refed.json"
        common = ["--weights", "alternating:2,1", "--no-timestamp"]
        assert run_cli(
            "analyze", "--generator", "ex2", "--n-max", "400", *common,
            "--out", str(fused),
        ) == 0
        assert run_cli(
            "analyze", "--in", str(seq_file), *common, "--out", str(refed)
        ) == 0
        d1, d2 = load(fused), load(refed)
        assert d1["analysis"] == d2["analysis"]
        assert d1["weights"] == d2["weights"]
        assert d1["sequence"]["length"] == d2["sequence"]["length"]

    def test_csv_output_with_sidecar(self, tmp_path):
        out = tmp_path / "r.csv"
        code = run_cli(
            "analyze",
            "--generator", "ex2",
            "--n-max", "100",
            "--format", "csv",
            "--no-timestamp",
            "--out", str(out),
        )
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "n,log_u,log_w"
        assert len(lines) == 102
        sidecar = load(tmp_path / "r.csv.json")
        assert sidecar["schema_version"] == 1

    def test_csv_needs_out(self):
        assert run_cli(
            "analyze", "--generator", "ex2", "--n-max", "100", "--format", "csv"
        ) == 2

    def test_env_var_sets_default_format(self, tmp_path, monkeypatch):
        monkeypatch.setenv("GMT_DEFAULT_FORMAT", "csv")
        out = tmp_path / "r.csv"
        assert run_cli(
            "analyze", "--generator", "ex2", "--n-max", "50",
            "--no-timestamp", "--out", str(out),
        ) == 0
        assert out.read_text().startswith("n,log_u,log_w")
        monkeypatch.setenv("GMT_DEFAULT_FORMAT", "yaml")
        assert run_cli(
            "analyze", "--generator", "ex2", "--n-max", "50", "--out", str(out)
        ) == 2

    def test_window_flag(self, tmp_path):
        out = tmp_path / "r.json"
        assert run_cli(
            "analyze", "--generator", "ex2", "--n-max", "1000",
            "--window", "200:500", "--no-timestamp", "--out", str(out),
        ) == 0
        doc = load(out)
        assert doc["analysis"]["gbar"]["window"] == {"start": 200, "end": 500}


class TestIfnAnalyze:
    def test_hopping_sequence_report(self, tmp_path):
        out = tmp_path / "r.json"
        code = run_cli(
            "ifn-analyze",
            "--generator", "ex3-ifn",
            "--n-max", "600",
            "--no-timestamp",
            "--out", str(out),
        )
        assert code == 0
        doc = load(out)
        xi = doc["analysis"]["xi_estimate"]
        assert xi["mu"] == pytest.approx(0.75, abs=2e-3)
        assert xi["nu"] == pytest.approx(1.0 / 9.0, abs=2e-3)
        assert doc["analysis"]["mean_verdict"]["passed"] is True
        assert doc["analysis"]["plain_convergence"] is False
        assert doc["analysis"]["tauber"]["recovery_verdict"] is False

    def test_otimes_mode(self, tmp_path):
        out = tmp_path / "r.json"
        code = run_cli(
            "ifn-analyze",
            "--generator", "ex4-ifn",
            "--weights", "alternating:1,3",
            "--n-max", "600",
            "--mode", "otimes",
            "--no-timestamp",
            "--out", str(out),
        )
        assert code == 0
        doc = load(out)
        xi = doc["analysis"]["xi_estimate"]
        assert xi["mu"] == pytest.approx(1.0 / 27.0, abs=2e-3)
        assert xi["nu"] == pytest.approx(7.0 / 8.0, abs=2e-3)

    def test_precondition_failure_exits_3(self):
        # Index 0 of the drifting sequence has nu = 0: the additive mean
        # assumption fails loudly.
        assert run_cli("ifn-analyze", "--generator", "nonunique", "--n-max", "50") == 3

    def test_kind_mismatch_is_config_error(self):
        assert run_cli("ifn-analyze", "--generator", "ex2", "--n-max", "50") == 2
        assert run_cli("analyze", "--generator", "ex3-ifn", "--n-max", "50") == 2


class TestConfigErrors:
    def test_unknown_generator(self):
        assert run_cli("analyze", "--generator", "bogus") == 2

    def test_unknown_weights(self):
        assert run_cli(
            "analyze", "--generator", "ex2", "--n-max", "100", "--weights", "what"
        ) == 2

    def test_window_must_fit(self):
        assert run_cli(
            "analyze", "--generator", "ex2", "--n-max", "100", "--window", "50:500"
        ) == 2

    def test_bad_window_spec(self):
        assert run_cli(
            "analyze", "--generator", "ex2", "--n-max", "100", "--window", "nope"
        ) == 2

    def test_bad_lambda_grid(self):
        assert run_cli(
            "analyze", "--generator", "ex2", "--n-max", "100", "--lambda-grid", "1.0"
        ) == 2

    def test_n_max_rejected_with_input_file(self, tmp_path):
        f = tmp_path / "seq.txt"
        f.write_text("log:\n0.0\n0.1\n")
        assert run_cli("analyze", "--in", str(f), "--n-max", "5") == 2

    def test_missing_input_file(self):
        assert run_cli("analyze", "--in", "/nonexistent/seq.txt") == 2


class TestGenerateCommand:
    def test_writes_log_domain_file(self, tmp_path):
        out = tmp_path / "seq.txt"
        assert run_cli("generate", "--generator", "ex1", "--n-max", "5", "--out", str(out)) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "log:"
        assert len(lines) == 7

    def test_stdout(self, capsys):
        assert run_cli("generate", "--generator", "ex3-ifn", "--n-max", "2") == 0
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 3
        assert lines[0].count(",") == 1


class TestReportCommand:
    def test_summary_and_csv_conversion(self, tmp_path, capsys):
        doc_path = tmp_path / "r.json"
        assert run_cli(
            "analyze", "--generator", "ex2", "--n-max", "500",
            "--no-timestamp", "--out", str(doc_path),
        ) == 0
        curves_path = tmp_path / "curves.csv"
        assert run_cli(
            "report", "--in", str(doc_path), "--format", "csv",
            "--out", str(curves_path),
        ) == 0
        captured = capsys.readouterr().out
        assert "gbar verdict" in captured
        lines = curves_path.read_text().splitlines()
        assert lines[0] == "section,lambda,value"
        assert any(line.startswith("con1,") for line in lines[1:])

    def test_json_normalization(self, tmp_path):
        doc_path = tmp_path / "r.json"
        assert run_cli(
            "analyze", "--generator", "ex2", "--n-max", "200",
            "--no-timestamp", "--out", str(doc_path),
        ) == 0
        out = tmp_path / "copy.json"
        assert run_cli("report", "--in", str(doc_path), "--format", "json", "--out", str(out)) == 0
        assert load(out) == load(doc_path)

    def test_rejects_foreign_json(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{\"hello\": 1}")
        assert run_cli("report", "--in", str(bad)) == 2
        notjson = tmp_path / "notjson.txt"
        notjson.write_text("plain text")
        assert run_cli("report", "--in", str(notjson)) == 2


class TestModuleEntryPoint:
    def test_python_dash_m(self, tmp_path):
        out = tmp_path / "r.json"
        proc = subprocess.run(
            [
                sys.executable, "-m", "gmtauber", "analyze",
                "--generator", "ex2", "--n-max", "200",
                "--no-timestamp", "--out", str(out),
            ],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert load(out)["schema_version"] == 1
