import csv
import io
import json

import pytest
from click.testing import CliRunner

from ptilde2.cli import CSV_HEADER, main, scan_rows, scan_summary
from ptilde2.superalgebra import build_p_tilde_2
from ptilde2.modules import build_kac_module, gmodule_from_json
from ptilde2.superalgebra import superalgebra_from_json


@pytest.fixture
def runner():
    return CliRunner()


class TestH1Command:
    def test_text_output(self, runner):
        result = runner.invoke(main, ["h1", "--p", "5", "--a", "0", "--b", "3"])
        assert result.exit_code == 0
        assert "h1_total = 2" in result.output
        assert "agrees = true" in result.output

    def test_json_output(self, runner):
        result = runner.invoke(main, ["h1", "--p", "5", "--a", "1", "--b", "1", "--format", "json"])
        assert result.exit_code == 0
        data = json.loads(result.output)
        assert data["dims"]["h1_total"] == 0
        assert data["agrees"] is True
        assert data["lambda"] == [1, 1]

    def test_composite_modulus_is_usage_error(self, runner):
        result = runner.invoke(main, ["h1", "--p", "4", "--a", "0", "--b", "0"])
        assert result.exit_code == 2

    def test_even_regime_report(self, runner):
        result = runner.invoke(main, ["h1", "--p", "5", "--a", "2", "--b", "4", "--format", "json"])
        data = json.loads(result.output)
        assert data["dims"]["h1_total"] == 1
        assert data["dims"]["h1_even"] == 1
        assert len(data["representatives"]) == 1
        assert data["representatives"][0]["parity"] == 0


class TestScanCommand:
    def test_csv_shape_and_header(self, runner):
        result = runner.invoke(main, ["scan", "--p", "3", "--out", "csv"])
        assert result.exit_code == 0
        lines = [l for l in result.output.splitlines() if l and not l.startswith("#")]
        assert lines[0] == CSV_HEADER
        assert len(lines) == 1 + 9

    def test_json_matches_csv(self, runner):
        res_csv = runner.invoke(main, ["scan", "--p", "5", "--out", "csv"])
        res_json = runner.invoke(main, ["scan", "--p", "5", "--out", "json"])
        assert res_csv.exit_code == 0 and res_json.exit_code == 0
        body = [l for l in res_csv.output.splitlines() if l and not l.startswith("#")]
        csv_rows = list(csv.DictReader(io.StringIO("\n".join(body))))
        json_rows = json.loads(res_json.output)["rows"]
        assert len(csv_rows) == len(json_rows) == 25
        names = {
            "a": "a",
            "b": "b",
            "phi_b_minus_a": "phi_b_minus_a",
            "dim_K": "dim_K",
            "der_even": "dim_der_even",
            "der_odd": "dim_der_odd",
            "ider": "dim_ider",
            "h1": "h1_total",
            "predicted": "predicted",
            "agrees": "agrees",
        }
        for c_row, j_row in zip(csv_rows, json_rows):
            for c_name, j_name in names.items():
                j_val = j_row[j_name]
                c_val = c_row[c_name]
                if isinstance(j_val, bool):
                    assert c_val == str(j_val).lower()
                else:
                    assert int(c_val) == j_val

    def test_parallel_output_is_byte_identical(self, runner):
        serial = runner.invoke(main, ["scan", "--p", "3", "--out", "csv", "--jobs", "1"])
        parallel = runner.invoke(main, ["scan", "--p", "3", "--out", "csv", "--jobs", "2"])
        assert serial.output == parallel.output

    def test_double_dimension_rows_at_p5(self, runner):
        rows = scan_rows(5)
        double = [(r.a, r.b) for r in rows if r.h1_total == 2]
        assert double == [(0, 3)]
        assert all(r.agrees for r in rows)
        assert sum(r.dim_K for r in rows) == 25 * 6  # p^2 (p+1)

    def test_summary_counts(self):
        rows = scan_rows(3)
        summary = scan_summary(3, rows)
        assert summary["disagreements"] == []
        assert summary["clause_overlaps"] == []
        assert sum(int(v) for v in summary["h1_counts"].values()) == 9


class TestCheckCommand:
    @pytest.mark.parametrize("suite", ["algebra", "module", "weights", "lemmas"])
    def test_each_suite_passes(self, runner, suite):
        result = runner.invoke(main, ["check", "--p", "5", "--suite", suite])
        assert result.exit_code == 0, result.output
        assert f"suite {suite}: PASS" in result.output

    def test_all_suites_smallest_prime(self, runner):
        result = runner.invoke(main, ["check", "--p", "3", "--suite", "all"])
        assert result.exit_code == 0, result.output
        assert result.output.count("PASS") == 4

    def test_failures_set_exit_code(self, runner, monkeypatch):
        from ptilde2 import cli

        monkeypatch.setitem(cli._SUITES, "algebra", lambda p: ["planted failure"])
        result = runner.invoke(main, ["check", "--p", "3", "--suite", "algebra"])
        assert result.exit_code == 1
        assert "FAIL" in result.output


class TestExportCommand:
    def test_algebra_shape(self, runner):
        result = runner.invoke(main, ["export", "--p", "5", "--what", "algebra"])
        data = json.loads(result.output)
        assert len(data["labels"]) == 8
        assert len(data["structure"]) == 8
        assert all(len(plane) == 8 and all(len(r) == 8 for r in plane) for plane in data["structure"])

    def test_module_shape(self, runner):
        result = runner.invoke(
            main, ["export", "--p", "5", "--a", "0", "--b", "3", "--what", "module"]
        )
        data = json.loads(result.output)
        assert len(data["actions"]) == 8
        assert all(len(m) == 8 for m in data["actions"])

    def test_round_trips(self, runner):
        g = build_p_tilde_2(5)
        out = runner.invoke(main, ["export", "--p", "5", "--what", "algebra"])
        back = superalgebra_from_json(json.loads(out.output))
        assert back.labels == g.labels

        out = runner.invoke(main, ["export", "--p", "5", "--a", "0", "--b", "3", "--what", "module"])
        km = build_kac_module(g, 0, 3)
        back = gmodule_from_json(json.loads(out.output), g)
        assert back.labels == km.labels
        import numpy as np

        assert all(np.array_equal(x, y) for x, y in zip(back.actions, km.actions))

    def test_bad_modulus_rejected(self, runner):
        result = runner.invoke(main, ["export", "--p", "9", "--what", "algebra"])
        assert result.exit_code == 2
