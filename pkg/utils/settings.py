"""
Settings loader — one frozen view of every tunable limit.

Resolution order for each field (first hit wins):

  1. explicit override passed by the caller (CLI flag)
  2. ``POLYA_*`` environment variable
  3. ``config/polya.yaml`` (or the file named by ``POLYA_CONFIG``)
  4. built-in default
"""

from __future__ import annotations

import os
from collections.abc import Mapping
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import yaml

from utils.errors import DomainError

ROOT = Path(__file__).resolve().parent.parent
DEFAULT_CONFIG = ROOT / "config" / "polya.yaml"

OUTPUT_FORMATS = ("json", "csv")


@dataclass(frozen=True)
class Settings:
    """Resolved limits shared by the library and the CLI."""

    exact_threshold: int = 64
    series_order: int = 64
    enum_cap: Mapping[int, int] = field(default_factory=lambda: {1: 10, 2: 6})
    output_format: str = "json"
    mc_workers: int = 1
    mc_chunk_elements: int = 1 << 20

    def cap_for(self, dimension: int) -> int:
        try:
            return self.enum_cap[dimension]
        except KeyError:
            raise DomainError(f"no enumeration cap for dimension {dimension}") from None

    def to_dict(self) -> dict[str, Any]:
        return {
            "exact_threshold":   self.exact_threshold,
            "series_order":      self.series_order,
            "enum_cap":          {str(d): c for d, c in sorted(self.enum_cap.items())},
            "output_format":     self.output_format,
            "mc_workers":        self.mc_workers,
            "mc_chunk_elements": self.mc_chunk_elements,
        }


# ── Parsers ───────────────────────────────────────────────────────────────────

def _as_int(name: str, raw: Any, minimum: int = 0) -> int:
    try:
        value = int(raw)
    except (TypeError, ValueError):
        raise DomainError(f"{name} must be an integer, got {raw!r}") from None
    if value < minimum:
        raise DomainError(f"{name} must be >= {minimum}, got {value}")
    return value


def parse_enum_cap(raw: Any, base: Mapping[int, int] | None = None) -> dict[int, int]:
    """Parse ``"6"`` (both dimensions) or ``"1:10,2:6"`` into a cap mapping."""
    caps = dict(base or {1: 10, 2: 6})
    if isinstance(raw, Mapping):
        for dim, cap in raw.items():
            caps[_as_int("enumeration dimension", dim, 1)] = _as_int("enumeration cap", cap)
        return caps
    text = str(raw).strip()
    if ":" not in text:
        cap = _as_int("enumeration cap", text)
        return {dim: cap for dim in caps}
    for part in text.split(","):
        dim, _, cap = part.partition(":")
        caps[_as_int("enumeration dimension", dim.strip(), 1)] = _as_int(
            "enumeration cap", cap.strip()
        )
    return caps


def _check_format(raw: Any) -> str:
    fmt = str(raw).strip().lower()
    if fmt not in OUTPUT_FORMATS:
        raise DomainError(f"output format must be one of {OUTPUT_FORMATS}, got {raw!r}")
    return fmt


# ── Loader ────────────────────────────────────────────────────────────────────

def _load_yaml(path: Path) -> dict:
    if not path.exists():
        return {}
    with path.open() as fh:
        return yaml.safe_load(fh) or {}


def load_settings(
    config_path: str | Path | None = None,
    env: Mapping[str, str] | None = None,
    **overrides: Any,
) -> Settings:
    """
    Build a :class:`Settings` from YAML, environment and explicit overrides.

    ``overrides`` accepts the field names of :class:`Settings`; ``None``
    values are ignored so CLI options can be forwarded unconditionally.
    """
    env = os.environ if env is None else env
    path = Path(config_path or env.get("POLYA_CONFIG") or DEFAULT_CONFIG)
    cfg = _load_yaml(path)

    exact_threshold = cfg.get("exact", {}).get("threshold", 64)
    series_order    = cfg.get("series", {}).get("order", 64)
    enum_cap        = parse_enum_cap(cfg.get("enumeration", {}).get("cap", {}))
    output_format   = cfg.get("output", {}).get("format", "json")
    mc_cfg          = cfg.get("montecarlo", {})
    mc_workers      = mc_cfg.get("workers", 1)
    mc_chunk        = mc_cfg.get("chunk_elements", 1 << 20)

    if "POLYA_EXACT_THRESHOLD" in env:
        exact_threshold = env["POLYA_EXACT_THRESHOLD"]
    if "POLYA_SERIES_ORDER" in env:
        series_order = env["POLYA_SERIES_ORDER"]
    if "POLYA_ENUM_CAP" in env:
        enum_cap = parse_enum_cap(env["POLYA_ENUM_CAP"], enum_cap)
    if "POLYA_FORMAT" in env:
        output_format = env["POLYA_FORMAT"]

    given = {k: v for k, v in overrides.items() if v is not None}
    unknown = set(given) - set(Settings.__dataclass_fields__)
    if unknown:
        raise TypeError(f"unknown settings override(s): {sorted(unknown)}")
    if "enum_cap" in given:
        enum_cap = parse_enum_cap(given.pop("enum_cap"), enum_cap)

    return Settings(
        exact_threshold=_as_int("exact threshold", given.get("exact_threshold", exact_threshold), 1),
        series_order=_as_int("series order", given.get("series_order", series_order)),
        enum_cap=enum_cap,
        output_format=_check_format(given.get("output_format", output_format)),
        mc_workers=_as_int("workers", given.get("mc_workers", mc_workers), 1),
        mc_chunk_elements=_as_int("chunk elements", given.get("mc_chunk_elements", mc_chunk), 1),
    )
