"""
Tests for cli/polya_cli.py
"""

from __future__ import annotations

import csv
import io

import pytest

from cli.polya_cli import cli
from verify.paper_verifier import PaperVerifier
from tests.conftest import json_records


def _values(result) -> list[tuple[int, str]]:
    return [(r["n"], r["value"]) for r in json_records(result.stdout)]


# ── Tests: counting ───────────────────────────────────────────────────────────

class TestCount:
    def test_enumerate_2d(self, runner):
        result = runner.invoke(cli, ["count", "--dim", "2", "--n-max", "2", "--method", "enumerate"])
        assert result.exit_code == 0
        assert _values(result) == [(0, "1"), (1, "4"), (2, "36")]

    def test_formula_1d(self, runner):
        result = runner.invoke(cli, ["count", "--dim", "1", "--n-max", "3", "--method", "formula"])
        assert _values(result)[1:] == [(1, "2"), (2, "6"), (3, "20")]

    def test_single_row(self, runner):
        result = runner.invoke(cli, ["count", "--dim", "2", "--n-max", "0"])
        assert _values(result) == [(0, "1")]

    @pytest.mark.parametrize("method", ["formula", "series", "enumerate"])
    def test_methods_agree(self, runner, method):
        result = runner.invoke(cli, ["count", "--dim", "2", "--n-max", "3", "--method", method])
        assert _values(result) == [(0, "1"), (1, "4"), (2, "36"), (3, "400")]

    def test_record_schema(self, runner):
        record = json_records(runner.invoke(cli, ["count", "--n-max", "0"]).stdout)[0]
        assert record == {
            "command": "count",
            "params": {"dim": 2, "n_max": 0, "method": "formula"},
            "n": 0,
            "value": "1",
        }

    def test_cap_exceeded(self, runner):
        result = runner.invoke(cli, ["count", "--dim", "2", "--n-max", "7", "--method", "enumerate"])
        assert result.exit_code == 3
        assert result.stdout == ""
        assert "exceeds cap" in result.stderr

    def test_cap_flag(self, runner):
        result = runner.invoke(cli, ["count", "--dim", "1", "--n-max", "3",
                                     "--method", "enumerate", "--enum-cap", "1:2"])
        assert result.exit_code == 3

    def test_cap_env(self, runner):
        result = runner.invoke(cli, ["count", "--dim", "2", "--n-max", "2", "--method", "enumerate"],
                               env={"POLYA_ENUM_CAP": "1"})
        assert result.exit_code == 3

    def test_bad_dimension(self, runner):
        assert runner.invoke(cli, ["count", "--dim", "3"]).exit_code == 2


class TestSimple:
    def test_constants(self, runner):
        result = runner.invoke(cli, ["simple", "--dim", "2", "--n-max", "2"])
        assert result.exit_code == 0
        assert _values(result) == [(1, "4"), (2, "20")]

    def test_longer_2d(self, runner):
        result = runner.invoke(cli, ["simple", "--dim", "2", "--n-max", "4"])
        assert _values(result)[2:] == [(3, "176"), (4, "1876")]

    def test_1d(self, runner):
        result = runner.invoke(cli, ["simple", "--dim", "1", "--n-max", "3"])
        assert _values(result) == [(1, "2"), (2, "2"), (3, "4")]

    def test_enumerate_agrees(self, runner):
        result = runner.invoke(cli, ["simple", "--dim", "2", "--n-max", "3", "--method", "enumerate"])
        assert _values(result) == [(1, "4"), (2, "20"), (3, "176")]

    def test_zero_n_max_rejected(self, runner):
        result = runner.invoke(cli, ["simple", "--n-max", "0"])
        assert result.exit_code == 2
        assert result.stdout == ""

    def test_series_order_flag_limits_n_max(self, runner):
        result = runner.invoke(cli, ["simple", "--dim", "2", "--n-max", "4", "--series-order", "3"])
        assert result.exit_code == 3
        assert "series truncation order 3" in result.stderr

    def test_series_order_env(self, runner):
        result = runner.invoke(cli, ["simple", "--n-max", "4"], env={"POLYA_SERIES_ORDER": "2"})
        assert result.exit_code == 3

    def test_series_order_flag_beats_env(self, runner):
        result = runner.invoke(cli, ["simple", "--n-max", "4", "--series-order", "4"],
                               env={"POLYA_SERIES_ORDER": "2"})
        assert _values(result)[-1] == (4, "1876")

    def test_count_series_method_limited_too(self, runner):
        result = runner.invoke(cli, ["count", "--n-max", "5", "--method", "series",
                                     "--series-order", "4"])
        assert result.exit_code == 3


# ── Tests: probabilities ──────────────────────────────────────────────────────

class TestReturnProb:
    def test_exact_2d(self, runner):
        result = runner.invoke(cli, ["return-prob", "--dim", "2", "--terms", "3", "--mode", "exact"])
        assert json_records(result.stdout)[0]["value"] == "95/256"

    def test_exact_1d(self, runner):
        result = runner.invoke(cli, ["return-prob", "--dim", "1", "--terms", "1"])
        assert json_records(result.stdout)[0]["value"] == "1/2"

    def test_float_many_terms(self, runner):
        result = runner.invoke(cli, ["return-prob", "--dim", "2", "--terms", "10000", "--mode", "float"])
        assert result.exit_code == 0
        assert 0.5 < json_records(result.stdout)[0]["value"] < 1.0

    def test_exact_threshold(self, runner):
        result = runner.invoke(cli, ["return-prob", "--terms", "65"])
        assert result.exit_code == 3
        assert "float mode" in result.stderr

    def test_threshold_flag(self, runner):
        result = runner.invoke(cli, ["return-prob", "--terms", "3", "--exact-threshold", "2"])
        assert result.exit_code == 3

    def test_threshold_env(self, runner):
        result = runner.invoke(cli, ["return-prob", "--terms", "3"],
                               env={"POLYA_EXACT_THRESHOLD": "2"})
        assert result.exit_code == 3

    def test_zero_terms(self, runner):
        result = runner.invoke(cli, ["return-prob", "--terms", "0"])
        assert result.exit_code == 2
        assert result.stderr.startswith("Error:")


class TestReports:
    def test_asymptotics(self, runner):
        result = runner.invoke(cli, ["asymptotics", "--dim", "2", "--n", "1000"])
        assert abs(json_records(result.stdout)[0]["ratio"] - 1.0) < 1e-3

    def test_divergence(self, runner):
        result = runner.invoke(cli, ["divergence", "--dim", "2", "--terms", "3"])
        record = json_records(result.stdout)[0]
        assert record["return_probability"] == "95/256"
        assert record["lower_bound"] == "125/381"
        assert record["holds"] is True

    def test_gf_values(self, runner):
        result = runner.invoke(cli, ["gf-values", "--dim", "2", "--x", "0.5", "--terms", "200"])
        assert json_records(result.stdout)[0]["residual"] < 1e-12

    def test_gf_values_outside_disc(self, runner):
        assert runner.invoke(cli, ["gf-values", "--x", "1.5"]).exit_code == 2


# ── Tests: walks and codec ────────────────────────────────────────────────────

class TestClassify:
    def test_simple_loop(self, runner):
        record = json_records(runner.invoke(cli, ["classify", "--walk", "RULLDR"]).stdout)[0]
        assert record["class"] == "SimpleLoop"
        assert record["probability"] == "1/4096"
        assert record["simple_prefix"] == "RULLDR"
        assert record["loop_suffix"] == ""

    def test_composite_loop(self, runner):
        record = json_records(runner.invoke(cli, ["classify", "--walk", "RLUD"]).stdout)[0]
        assert record["class"] == "CompositeLoop"
        assert (record["simple_prefix"], record["loop_suffix"]) == ("RL", "UD")

    def test_trivial_loop(self, runner):
        record = json_records(runner.invoke(cli, ["classify", "--walk", ""]).stdout)[0]
        assert record["class"] == "TrivialLoop"
        assert record["first_return_index"] is None

    def test_not_a_loop(self, runner):
        record = json_records(runner.invoke(cli, ["classify", "--walk", "RR", "--dim", "1"]).stdout)[0]
        assert record["class"] == "NotLoop"
        assert record["displacement"] == [2]

    def test_bad_character(self, runner):
        assert runner.invoke(cli, ["classify", "--walk", "RX"]).exit_code == 2


class TestCodec:
    def test_decode(self, runner):
        result = runner.invoke(cli, ["codec", "decode", "--pair", "+---++,++---+"])
        record = json_records(result.stdout)[0]
        assert record["walk"] == "RULLDR"
        assert record["balanced"] is True
        assert record["is_loop"] is True

    def test_encode(self, runner):
        result = runner.invoke(cli, ["codec", "encode", "--walk", "RUDDLU"])
        record = json_records(result.stdout)[0]
        assert record["pair"] == "+-++--,++---+"
        assert record["balanced"] is True
        assert record["is_loop"] is True

    def test_encode_open_walk(self, runner):
        record = json_records(runner.invoke(cli, ["codec", "encode", "--walk", "RR"]).stdout)[0]
        assert record["pair"] == "++,++"
        assert record["balanced"] is False
        assert record["is_loop"] is False

    def test_unequal_lengths(self, runner):
        result = runner.invoke(cli, ["codec", "decode", "--pair", "+,+-"])
        assert result.exit_code == 2
        assert result.stdout == ""
        assert "Error:" in result.stderr


# ── Tests: Monte Carlo ────────────────────────────────────────────────────────

class TestSimulate:
    def test_near_exact(self, runner):
        result = runner.invoke(cli, ["simulate", "--dim", "2", "--steps", "6",
                                     "--samples", "100000", "--seed", "7"])
        assert result.exit_code == 0
        record = json_records(result.stdout)[0]
        assert abs(record["returned_fraction"] - 95 / 256) < 3 * record["stderr"]
        assert record["params"]["seed"] == 7

    def test_worker_count_changes_nothing_but_streams(self, runner):
        args = ["simulate", "--steps", "4", "--samples", "1000", "--seed", "3", "--workers", "2"]
        first = json_records(runner.invoke(cli, args).stdout)[0]
        second = json_records(runner.invoke(cli, args).stdout)[0]
        assert first == second

    def test_zero_samples(self, runner):
        result = runner.invoke(cli, ["simulate", "--steps", "6", "--samples", "0"])
        assert result.exit_code == 2

    def test_mc_compare(self, runner):
        result = runner.invoke(cli, ["mc-compare", "--dim", "2", "--terms", "1",
                                     "--samples", "20000", "--seed", "1"])
        record = json_records(result.stdout)[0]
        assert record["exact"] == "1/4"
        assert record["z_score"] < 4.0


# ── Tests: formats and metrics ────────────────────────────────────────────────

class TestOutputFormats:
    def test_csv_matches_json(self, runner):
        args = ["simple", "--dim", "2", "--n-max", "4"]
        as_json = _values(runner.invoke(cli, args))
        as_csv = runner.invoke(cli, args + ["--format", "csv"]).stdout
        rows = list(csv.DictReader(io.StringIO(as_csv)))
        assert [(int(r["n"]), r["value"]) for r in rows] == as_json
        assert rows[0]["param_dim"] == "2"

    def test_format_env(self, runner):
        result = runner.invoke(cli, ["count", "--n-max", "0"], env={"POLYA_FORMAT": "csv"})
        assert result.stdout.splitlines()[0].startswith("command,")

    def test_flag_beats_env(self, runner):
        result = runner.invoke(cli, ["count", "--n-max", "0", "--format", "json"],
                               env={"POLYA_FORMAT": "csv"})
        assert json_records(result.stdout)[0]["value"] == "1"

    def test_metrics_file(self, runner, tmp_path):
        target = tmp_path / "out" / "metrics.prom"
        result = runner.invoke(cli, ["--metrics-file", str(target),
                                     "count", "--n-max", "2", "--method", "enumerate"])
        assert result.exit_code == 0
        text = target.read_text()
        assert "polya_command_duration_seconds" in text
        assert "polya_walk_nodes_visited_total" in text

    def test_version(self, runner):
        result = runner.invoke(cli, ["--version"])
        assert result.exit_code == 0
        assert "polya" in result.stdout


# ── Tests: verification ───────────────────────────────────────────────────────

class TestVerifyPaper:
    def test_all_checks_pass(self, runner):
        result = runner.invoke(cli, ["verify-paper"])
        assert result.exit_code == 0
        records = json_records(result.stdout)
        assert records and all(r["passed"] for r in records)
        assert f"{len(records)}/{len(records)} checks passed" in result.stderr

    def test_failure_exit_code(self, runner, failing_checks_path):
        result = runner.invoke(cli, ["verify-paper", "--checks", str(failing_checks_path)])
        assert result.exit_code == 1
        assert [r["passed"] for r in json_records(result.stdout)] == [True, False]
        assert "1/2 checks passed" in result.stderr

    def test_enum_cap_flag_reaches_checks(self, runner):
        result = runner.invoke(cli, ["verify-paper", "--enum-cap", "1"])
        assert result.exit_code == 1
        failed = {r["id"] for r in json_records(result.stdout) if not r["passed"]}
        assert {"C009", "C010"} <= failed

    def test_every_check_reported_in_csv(self, runner, checks_path):
        result = runner.invoke(cli, ["verify-paper", "--format", "csv"])
        rows = list(csv.DictReader(io.StringIO(result.stdout)))
        assert len(rows) == len(PaperVerifier(checks_path).checks)
        assert all(r["passed"] == "true" for r in rows)
