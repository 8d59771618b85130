"""
Shared pytest fixtures for the Polya toolkit test suite.
"""

from __future__ import annotations

import json
from pathlib import Path

import pytest
import yaml
from click.testing import CliRunner

from walks.lattice_walks import Walk

ENV_VARS = (
    "POLYA_EXACT_THRESHOLD",
    "POLYA_ENUM_CAP",
    "POLYA_FORMAT",
    "POLYA_SERIES_ORDER",
    "POLYA_CONFIG",
)


# ── Environment isolation ─────────────────────────────────────────────────────

@pytest.fixture(autouse=True)
def clean_env(monkeypatch: pytest.MonkeyPatch) -> None:
    """Every test starts from the repository defaults."""
    for var in ENV_VARS:
        monkeypatch.delenv(var, raising=False)


# ── Walk fixtures ─────────────────────────────────────────────────────────────

@pytest.fixture()
def example_walk() -> Walk:
    """The loop of the first worked example."""
    return Walk.parse("RULLDR", 2)


@pytest.fixture()
def reverse_example_walk() -> Walk:
    """The loop of the second worked example."""
    return Walk.parse("RUDDLU", 2)


# ── Config fixtures ───────────────────────────────────────────────────────────

@pytest.fixture()
def settings_path(tmp_path: Path) -> Path:
    """Write a small polya.yaml to a temp dir and return the path."""
    cfg = {
        "exact": {"threshold": 16},
        "series": {"order": 12},
        "enumeration": {"cap": {1: 4, 2: 3}},
        "output": {"format": "csv"},
        "montecarlo": {"workers": 2, "chunk_elements": 4096},
    }
    p = tmp_path / "polya.yaml"
    p.write_text(yaml.dump(cfg))
    return p


@pytest.fixture()
def checks_path() -> Path:
    return Path(__file__).resolve().parent.parent / "config" / "paper_checks.yaml"


def _check(check_id: str, operation: str, args: dict, operator: str, expected, **extra) -> dict:
    return {
        "id": check_id, "name": f"check {check_id}", "claim": "test",
        "operation": operation, "args": args,
        "operator": operator, "expected": expected, **extra,
    }


@pytest.fixture()
def failing_checks_path(tmp_path: Path) -> Path:
    """One passing and one failing check."""
    data = {"checks": [
        _check("T001", "simple_loop_count_series", {"dim": 2, "n": 1}, "eq", 4),
        _check("T002", "simple_loop_count_series", {"dim": 2, "n": 2}, "eq", 21),
    ]}
    p = tmp_path / "checks_failing.yaml"
    p.write_text(yaml.dump(data))
    return p


@pytest.fixture()
def capped_checks_path(tmp_path: Path) -> Path:
    """A check whose enumeration exceeds the default cap."""
    data = {"checks": [
        _check("T010", "simple_loop_count_enumerate", {"dim": 2, "n": 9}, "eq", 0),
    ]}
    p = tmp_path / "checks_capped.yaml"
    p.write_text(yaml.dump(data))
    return p


# ── CLI fixtures ──────────────────────────────────────────────────────────────

@pytest.fixture()
def runner() -> CliRunner:
    return CliRunner()


def json_records(output: str) -> list[dict]:
    return [json.loads(line) for line in output.splitlines() if line.strip()]
