"""
Return Simulator — Monte Carlo estimate of P(return to origin within L steps).

Random source (pinned):

  • bit generator: numpy ``Philox`` (4×64, 10 rounds)
  • stream s of W is keyed by ``SeedSequence(seed).spawn(W)[s]``
  • sample j belongs to stream j mod W; a stream draws its samples in
    increasing j, each sample consuming exactly L 32-bit outputs
  • a step's direction index is the top log2(2d) bits of its output, read
    in the canonical order R, L, U, D, so each direction has probability
    exactly 1/(2d)

The estimate is therefore a pure function of (d, L, S, seed, W).

Usage::

    from montecarlo.return_simulator import McConfig, simulate_return
    est = simulate_return(McConfig(dimension=2, max_steps=6, samples=100_000, seed=7))
    est.returned_fraction   # ≈ 95/256
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any

import numpy as np

from analysis.return_analysis import Mode, render_number, return_probability
from utils.errors import DomainError
from utils.logger import get_logger
from utils.settings import Settings, load_settings
from utils.telemetry import MC_RETURNS, MC_SAMPLES
from walks.lattice_walks import DIMENSIONS, directions

log = get_logger(__name__)

SEED_MAX = 2**64 - 1


# ── Config / result dataclasses ───────────────────────────────────────────────

@dataclass(frozen=True)
class McConfig:
    """Simulation parameters; validated on construction."""

    dimension: int
    max_steps: int
    samples: int
    seed: int = 0
    streams: int = 1

    def __post_init__(self) -> None:
        if self.dimension not in DIMENSIONS:
            raise DomainError(f"dimension must be 1 or 2, got {self.dimension!r}")
        if self.max_steps < 2 or self.max_steps % 2:
            raise DomainError(f"max_steps must be even and >= 2, got {self.max_steps}")
        if self.samples < 1:
            raise DomainError(f"samples must be >= 1, got {self.samples}")
        if not 0 <= self.seed <= SEED_MAX:
            raise DomainError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.streams < 1:
            raise DomainError(f"streams must be >= 1, got {self.streams}")

    def to_dict(self) -> dict[str, Any]:
        return {
            "dimension": self.dimension,
            "max_steps": self.max_steps,
            "samples":   self.samples,
            "seed":      self.seed,
            "streams":   self.streams,
        }


@dataclass(frozen=True)
class McEstimate:
    """Fraction of sampled walks that returned, with its standard error."""

    returned: int
    samples: int

    @property
    def returned_fraction(self) -> float:
        return self.returned / self.samples

    @property
    def stderr(self) -> float:
        f = self.returned_fraction
        return math.sqrt(f * (1.0 - f) / self.samples)

    def to_dict(self) -> dict[str, Any]:
        return {
            "returned":          self.returned,
            "samples":           self.samples,
            "returned_fraction": self.returned_fraction,
            "stderr":            self.stderr,
        }


@dataclass(frozen=True)
class Comparison:
    """Monte Carlo estimate against the exact partial sum r_N."""

    dimension: int
    terms: int
    exact: Any
    estimate: McEstimate

    @property
    def abs_error(self) -> float:
        return abs(self.estimate.returned_fraction - float(self.exact))

    @property
    def z_score(self) -> float:
        if self.estimate.stderr > 0:
            return self.abs_error / self.estimate.stderr
        return 0.0 if self.abs_error == 0 else math.inf

    def to_dict(self) -> dict[str, Any]:
        return {
            "dimension": self.dimension,
            "terms":     self.terms,
            "exact":     render_number(self.exact),
            **self.estimate.to_dict(),
            "abs_error": self.abs_error,
            "z_score":   self.z_score,
        }


# ── Simulator ─────────────────────────────────────────────────────────────────

class ReturnSimulator:
    """
    Runs the streams of a :class:`McConfig` on a thread pool.

    Samples are processed in batches holding at most
    ``settings.mc_chunk_elements`` step draws; batch boundaries never change
    which draws a sample receives.
    """

    def __init__(self, settings: Settings | None = None) -> None:
        self.settings = settings or load_settings()

    @staticmethod
    def _stream_sizes(cfg: McConfig) -> list[int]:
        base, extra = divmod(cfg.samples, cfg.streams)
        return [base + (1 if s < extra else 0) for s in range(cfg.streams)]

    def _run_stream(self, cfg: McConfig, seed_seq: np.random.SeedSequence, count: int) -> int:
        gen = np.random.Generator(np.random.Philox(seed_seq))
        shift = 32 - (2 * cfg.dimension).bit_length() + 1
        vectors = np.array([step.value for step in directions(cfg.dimension)], dtype=np.int32)

        rows_per_batch = max(1, self.settings.mc_chunk_elements // cfg.max_steps)
        returned = 0
        done = 0
        while done < count:
            rows = min(rows_per_batch, count - done)
            raw = gen.integers(0, 2**32, size=(rows, cfg.max_steps), dtype=np.uint32)
            index = raw >> np.uint32(shift)
            positions = np.cumsum(vectors[index], axis=1)
            at_origin = (positions[:, :, 0] == 0) & (positions[:, :, 1] == 0)
            returned += int(np.count_nonzero(at_origin.any(axis=1)))
            done += rows
        return returned

    def run(self, cfg: McConfig) -> McEstimate:
        seeds = np.random.SeedSequence(cfg.seed).spawn(cfg.streams)
        sizes = self._stream_sizes(cfg)
        with ThreadPoolExecutor(max_workers=cfg.streams) as pool:
            counts = list(pool.map(
                lambda job: self._run_stream(cfg, *job), zip(seeds, sizes)
            ))

        estimate = McEstimate(returned=sum(counts), samples=cfg.samples)
        MC_SAMPLES.labels(dimension=str(cfg.dimension)).inc(cfg.samples)
        MC_RETURNS.labels(dimension=str(cfg.dimension)).inc(estimate.returned)
        log.info(
            "simulated %d %dD walks (L=%d, seed=%d, W=%d): %d returned",
            cfg.samples, cfg.dimension, cfg.max_steps, cfg.seed, cfg.streams,
            estimate.returned,
        )
        return estimate


# ── Module-level operations ───────────────────────────────────────────────────

def simulate_return(cfg: McConfig, settings: Settings | None = None) -> McEstimate:
    return ReturnSimulator(settings).run(cfg)


def estimate_vs_exact(
    dimension: int,
    terms: int,
    samples: int,
    seed: int = 0,
    streams: int = 1,
    settings: Settings | None = None,
) -> Comparison:
    """Simulate with L = 2N and compare against the exact r_N."""
    settings = settings or load_settings()
    exact = return_probability(
        dimension, terms, Mode.EXACT, exact_threshold=settings.exact_threshold
    ).value
    cfg = McConfig(
        dimension=dimension, max_steps=2 * terms, samples=samples, seed=seed, streams=streams
    )
    return Comparison(dimension, terms, exact, simulate_return(cfg, settings))
