import csv
import io
import json

import pytest

from crankparity.cli import RunConfig, main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


class TestRunConfig:
    def test_defaults(self):
        cfg = RunConfig()
        assert cfg.precision_bits == 128 and cfg.oracle_max == 60

    def test_limits(self):
        with pytest.raises(ValueError):
            RunConfig(terms=4)
        with pytest.raises(ValueError):
            RunConfig(precision_bits=32)
        with pytest.raises(ValueError):
            RunConfig(oracle_max=91)


class TestCoeffs:
    def test_table_with_anomaly_flag(self, capsys):
        code, out = run_cli(capsys, "--terms", "50", "coeffs", "1", "4")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[1].split() == ["1", "-3", "-1", "anomaly"]
        assert lines[2].split() == ["2", "2", "2", "match"]
        assert lines[4].split() == ["4", "5", "5", "match"]

    def test_json_schema(self, capsys):
        code, out = run_cli(capsys, "--terms", "50", "--output", "json",
                            "coeffs", "2", "3")
        payload = json.loads(out)
        assert payload["schema"] == "crank-parity/1"
        assert payload["rows"][0]["series"] == "2"

    def test_truncation_hint(self, capsys):
        with pytest.raises(SystemExit) as err:
            main(["--terms", "10", "coeffs", "1", "50", "--source", "series"])
        assert "--terms at least 51" in str(err.value)

    def test_oracle_cap(self, capsys):
        with pytest.raises(SystemExit) as err:
            main(["coeffs", "1", "80"])
        assert "oracle" in str(err.value)


class TestVerify:
    def test_family_alpha1(self, capsys):
        code, out = run_cli(capsys, "--output", "json", "verify", "family",
                            "--alpha", "1")
        payload = json.loads(out)
        assert code == 0 and payload["passed"] and payload["count"] == 80

    def test_family_text(self, capsys):
        code, out = run_cli(capsys, "verify", "family", "--n-max", "500")
        assert code == 0 and out.startswith("PASS family")

    def test_ramatype(self, capsys):
        code, out = run_cli(capsys, "--terms", "200", "verify", "ramatype")
        assert code == 0 and "PASS" in out

    def test_chan_and_combproof(self, capsys):
        code, _ = run_cli(capsys, "--terms", "120", "verify", "chan")
        assert code == 0
        code, _ = run_cli(capsys, "--terms", "120", "verify", "combproof")
        assert code == 0

    def test_informative_and_watson(self, capsys):
        code, _ = run_cli(capsys, "--terms", "300", "verify", "informative")
        assert code == 0
        code, _ = run_cli(capsys, "--terms", "300", "verify",
                          "watson-whipple")
        assert code == 0

    def test_weighted(self, capsys):
        code, out = run_cli(capsys, "verify", "weighted", "--n-max", "15")
        assert code == 0 and "15 cases" in out

    def test_adh(self, capsys):
        code, out = run_cli(capsys, "verify", "adh", "--n-max", "40")
        assert code == 0 and "PASS" in out

    def test_ladder_and_claim(self, capsys):
        code, _ = run_cli(capsys, "verify", "ladder", "--alpha-max", "2")
        assert code == 0
        code, _ = run_cli(capsys, "verify", "claimL", "--alpha", "1")
        assert code == 0

    def test_unknown_check_rejected(self, capsys):
        with pytest.raises(SystemExit):
            main(["verify", "nonsense"])


class TestAsymptotic:
    def test_header_and_rows(self, capsys):
        code, out = run_cli(capsys, "asymptotic", "1", "5")
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["n", "exact", "main", "abs_error", "bound", "pass"]
        assert len(rows) == 6
        assert all(r[5] == "true" for r in rows[1:])

    def test_bound_at_16(self, capsys):
        code, out = run_cli(capsys, "asymptotic", "16", "16")
        row = list(csv.reader(io.StringIO(out)))[1]
        assert row[4].startswith("388")

    def test_parallel_is_deterministic(self, capsys):
        _, seq = run_cli(capsys, "asymptotic", "3", "8")
        _, par = run_cli(capsys, "--parallel", "asymptotic", "3", "8")
        assert seq == par


class TestDistinct:
    def test_rows(self, capsys):
        code, out = run_cli(capsys, "--output", "json", "distinct", "1", "8")
        payload = json.loads(out)
        assert code == 0
        by_n = {row["n"]: row for row in payload["rows"]}
        assert by_n[6]["value"] == 2 and by_n[6]["oracle"] == 2
        assert by_n[6]["case"] == "R(floor) even negative"
        assert by_n[2]["floor_term"] == 1 and by_n[2]["ceil_term"] == 0


class TestLadderDump:
    def test_json_payload(self, capsys):
        code, out = run_cli(capsys, "ladder", "--alpha-max", "1",
                            "--imax", "2")
        payload = json.loads(out)
        assert code == 0
        assert payload["schema"] == "crank-parity/1"
        assert payload["A"]["1"]["1"] == "11"
        rung1 = [r for r in payload["ladder"] if r["nu"] == 1][0]
        assert rung1["entries"] == {"1": "5"}
        assert rung1["valuations"] == {"1": 1}


class TestDumpSeries:
    def test_crank_dump(self, capsys):
        code, out = run_cli(capsys, "--terms", "12", "dump-series", "crank")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "0\t1"
        assert lines[1] == "1\t-3"
        assert len(lines) == 12

    def test_cache_roundtrip(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("CRANK_PARITY_CACHE_DIR", str(tmp_path))
        _, first = run_cli(capsys, "--terms", "40", "coeffs", "2", "6",
                           "--source", "series")
        cached = list(tmp_path.glob("crank_parity.*.tsv"))
        assert cached, "cache file written"
        _, second = run_cli(capsys, "--terms", "40", "coeffs", "2", "6",
                            "--source", "series")
        assert first == second
