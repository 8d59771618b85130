"""
Prometheus instruments for enumeration and simulation work.

The registry is private to the toolkit (never the process-global default)
and is only exported on request via ``write_metrics``; there is no HTTP
endpoint.
"""

from __future__ import annotations

from pathlib import Path

from prometheus_client import CollectorRegistry, Counter, Histogram, write_to_textfile

REGISTRY = CollectorRegistry()

# ── Instruments ───────────────────────────────────────────────────────────────

WALK_NODES = Counter(
    "polya_walk_nodes_visited",
    "Search-tree nodes visited by exhaustive walk enumeration",
    ["dimension"],
    registry=REGISTRY,
)

MC_SAMPLES = Counter(
    "polya_mc_samples",
    "Monte Carlo walks simulated",
    ["dimension"],
    registry=REGISTRY,
)

MC_RETURNS = Counter(
    "polya_mc_returns",
    "Monte Carlo walks that hit the origin within the step budget",
    ["dimension"],
    registry=REGISTRY,
)

COMMAND_DURATION = Histogram(
    "polya_command_duration_seconds",
    "Wall-clock duration of CLI commands",
    ["command"],
    buckets=[0.01, 0.05, 0.1, 0.5, 1.0, 5.0, 10.0, 30.0, 60.0],
    registry=REGISTRY,
)


def write_metrics(path: str | Path) -> Path:
    """Write the registry in the text exposition format and return the path."""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    write_to_textfile(str(target), REGISTRY)
    return target
