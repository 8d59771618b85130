"""
Command-line interface for the Polya recurrence toolkit.

Every command writes machine-readable records to stdout (JSON Lines by
default, CSV with ``--format csv``); diagnostics and errors go to stderr.

Exit codes: 0 success, 1 failed verification, 2 domain/validation error,
3 resource cap exceeded.

Usage:
    python -m cli count --dim 2 --n-max 5 --method enumerate
    python -m cli simple --dim 2 --n-max 2
    python -m cli return-prob --dim 2 --terms 3 --mode exact
    python -m cli codec decode --pair "+---++,++---+"
    python -m cli asymptotics --dim 2 --n 1000
    python -m cli simulate --dim 2 --steps 6 --samples 100000 --seed 7
    python -m cli verify-paper
"""

from __future__ import annotations

import functools
import sys
from collections.abc import Callable, Iterable
from typing import Any

import click

from analysis.return_analysis import (
    Mode,
    asymptotic_ratio,
    closed_form_loop_count,
    constant_term_loop_counts,
    generating_function_values,
    identity_bounds,
    return_probability,
    simple_loop_counts,
    weighted_loop_partial_sum,
)
from bijection.sign_bijection import SignPair, decode_pair, encode_walk
from montecarlo.return_simulator import McConfig, ReturnSimulator, estimate_vs_exact
from storage.record_writer import OutputRecord, RecordWriter
from utils.errors import PolyaError, ResourceLimitError
from utils.logger import get_logger
from utils.settings import OUTPUT_FORMATS, Settings, load_settings
from utils.telemetry import COMMAND_DURATION, write_metrics
from verify.paper_verifier import DEFAULT_CHECKS, PaperVerifier
from walks.lattice_walks import (
    LoopClass,
    Walk,
    check_enumeration_cap,
    classify,
    displacement,
    enumerate_loop_count,
    enumerate_simple_loop_count,
    first_return_index,
    split_at_first_return,
    walk_probability,
)

__all__ = [
    "cli",
    "main",
]

log = get_logger(__name__)

DIM = click.option(
    "--dim", type=click.IntRange(1, 2), default=2, show_default=True,
    help="Lattice dimension",
)


class PolyaGroup(click.Group):
    """Maps toolkit errors onto exit codes and stderr messages."""

    def invoke(self, ctx: click.Context) -> Any:
        try:
            return super().invoke(ctx)
        except PolyaError as exc:
            click.echo(f"Error: {exc}", err=True)
            ctx.exit(exc.exit_code)


# ── Shared plumbing ───────────────────────────────────────────────────────────

def with_settings(func: Callable[..., Any]) -> Callable[..., Any]:
    """Add the limit/format overrides and pass a resolved ``Settings``."""

    @click.option("--format", "output_format", type=click.Choice(OUTPUT_FORMATS),
                  default=None, help="Output format [env: POLYA_FORMAT, default json]")
    @click.option("--exact-threshold", type=int, default=None,
                  help="Largest N for exact sums [env: POLYA_EXACT_THRESHOLD]")
    @click.option("--enum-cap", default=None,
                  help="Enumeration cap: N, or per dimension '1:10,2:6' [env: POLYA_ENUM_CAP]")
    @click.option("--series-order", type=int, default=None,
                  help="Series truncation order; limits --n-max of series methods [env: POLYA_SERIES_ORDER]")
    @functools.wraps(func)
    def wrapper(
        output_format: str | None,
        exact_threshold: int | None,
        enum_cap: str | None,
        series_order: int | None,
        **kwargs: Any,
    ) -> Any:
        settings = load_settings(
            output_format=output_format,
            exact_threshold=exact_threshold,
            enum_cap=enum_cap,
            series_order=series_order,
        )
        command = click.get_current_context().command_path.split(" ", 1)[-1]
        with COMMAND_DURATION.labels(command=command).time():
            return func(settings=settings, **kwargs)

    return wrapper


def check_series_order(settings: Settings, n_max: int) -> None:
    """Series methods only know coefficients up to the configured truncation order."""
    if n_max > settings.series_order:
        raise ResourceLimitError(
            f"n-max {n_max} exceeds the series truncation order {settings.series_order}; "
            "raise --series-order or POLYA_SERIES_ORDER"
        )


def emit(settings: Settings, command: str, params: dict[str, Any],
         rows: Iterable[dict[str, Any]]) -> None:
    writer = RecordWriter(sys.stdout, settings.output_format)
    writer.write_all(OutputRecord(command, params, row) for row in rows)


# ── Group ─────────────────────────────────────────────────────────────────────

@click.group(cls=PolyaGroup)
@click.option("--metrics-file", type=click.Path(dir_okay=False), default=None,
              help="Write Prometheus text-format metrics here after the command")
@click.version_option(version="1.0.0", prog_name="polya")
@click.pass_context
def cli(ctx: click.Context, metrics_file: str | None) -> None:
    """
    Compute and check every quantity of the lattice recurrence proof.

    Examples:

        polya simple --dim 2 --n-max 2        # P_1 = 4, P_2 = 20

        polya codec encode --walk RUDDLU      # +-++--,++---+

        polya verify-paper                    # pass/fail per claim
    """
    if metrics_file:
        ctx.call_on_close(lambda: write_metrics(metrics_file))


# ── Counting ──────────────────────────────────────────────────────────────────

@cli.command()
@DIM
@click.option("--n-max", type=click.IntRange(min=0), default=4, show_default=True,
              help="Largest half-length n")
@click.option("--method", type=click.Choice(["formula", "series", "enumerate"]),
              default="formula", show_default=True)
@with_settings
def count(settings: Settings, dim: int, n_max: int, method: str) -> None:
    """Loop counts B_n for n = 0..n-max."""
    if method == "formula":
        values = [closed_form_loop_count(dim, n) for n in range(n_max + 1)]
    elif method == "series":
        check_series_order(settings, n_max)
        values = constant_term_loop_counts(dim, n_max)
    else:
        cap = settings.cap_for(dim)
        check_enumeration_cap(dim, n_max, cap)
        values = [enumerate_loop_count(dim, n, cap=cap) for n in range(n_max + 1)]
    emit(settings, "count", {"dim": dim, "n_max": n_max, "method": method},
         ({"n": n, "value": str(v)} for n, v in enumerate(values)))


@cli.command()
@DIM
@click.option("--n-max", type=click.IntRange(min=1), default=4, show_default=True,
              help="Largest half-length n (simple loops start at n = 1)")
@click.option("--method", type=click.Choice(["series", "enumerate"]),
              default="series", show_default=True)
@with_settings
def simple(settings: Settings, dim: int, n_max: int, method: str) -> None:
    """Simple-loop counts P_n for n = 1..n-max."""
    if method == "series":
        check_series_order(settings, n_max)
        series = simple_loop_counts(dim, n_max)
        values = [series[n] for n in range(1, n_max + 1)]
    else:
        cap = settings.cap_for(dim)
        check_enumeration_cap(dim, n_max, cap)
        values = [enumerate_simple_loop_count(dim, n, cap=cap) for n in range(1, n_max + 1)]
    emit(settings, "simple", {"dim": dim, "n_max": n_max, "method": method},
         ({"n": n, "value": str(v)} for n, v in enumerate(values, start=1)))


# ── Probabilities ─────────────────────────────────────────────────────────────

@cli.command("return-prob")
@DIM
@click.option("--terms", type=int, required=True, help="Number of terms N of r_N")
@click.option("--mode", type=click.Choice([m.value for m in Mode]),
              default=Mode.EXACT.value, show_default=True)
@with_settings
def return_prob(settings: Settings, dim: int, terms: int, mode: str) -> None:
    """Partial sum r_N of the return probability."""
    result = return_probability(dim, terms, mode, exact_threshold=settings.exact_threshold)
    emit(settings, "return-prob", {"dim": dim, "terms": terms, "mode": mode},
         [result.to_dict()])


@cli.command()
@DIM
@click.option("--n", "n", type=int, required=True, help="Coefficient index")
@with_settings
def asymptotics(settings: Settings, dim: int, n: int) -> None:
    """Weighted loop coefficient against its 1/√(πn) or 1/(πn) prediction."""
    emit(settings, "asymptotics", {"dim": dim, "n": n}, [asymptotic_ratio(dim, n).to_dict()])


@cli.command()
@DIM
@click.option("--terms", type=click.IntRange(min=1), required=True)
@with_settings
def divergence(settings: Settings, dim: int, terms: int) -> None:
    """Growth of Σ b_n and the bounds 1 − 1/Σ b_n ≤ r_N ≤ 1."""
    bounds = identity_bounds(dim, terms, exact_threshold=settings.exact_threshold)
    emit(settings, "divergence", {"dim": dim, "terms": terms}, [{
        "weighted_loop_sum": weighted_loop_partial_sum(dim, terms),
        **bounds.to_dict(),
    }])


@cli.command("gf-values")
@DIM
@click.option("--x", "x", type=float, required=True, help="Evaluation point, 0 < x < 1")
@click.option("--terms", type=click.IntRange(min=1), default=2000, show_default=True)
@with_settings
def gf_values(settings: Settings, dim: int, x: float, terms: int) -> None:
    """Truncated b(x), p(x) and the residual of p = 1 − 1/b."""
    emit(settings, "gf-values", {"dim": dim, "x": x, "terms": terms},
         [generating_function_values(dim, x, terms).to_dict()])


# ── Walks and the bijection ───────────────────────────────────────────────────

@cli.command("classify")
@DIM
@click.option("--walk", required=True, help="Walk over RLUD (2D) or RL (1D); '' = trivial loop")
@with_settings
def classify_cmd(settings: Settings, dim: int, walk: str) -> None:
    """Loop class, displacement and first-return decomposition of a walk."""
    w = Walk.parse(walk, dim)
    loop_class = classify(w)
    row: dict[str, Any] = {
        "walk":                str(w),
        "class":               loop_class.value,
        "displacement":        list(displacement(w)),
        "first_return_index":  first_return_index(w),
        "probability":         f"{walk_probability(w).numerator}/{walk_probability(w).denominator}",
        "simple_prefix":       None,
        "loop_suffix":         None,
    }
    if loop_class in (LoopClass.SIMPLE_LOOP, LoopClass.COMPOSITE_LOOP):
        prefix, suffix = split_at_first_return(w)
        row["simple_prefix"], row["loop_suffix"] = str(prefix), str(suffix)
    emit(settings, "classify", {"dim": dim, "walk": walk}, [row])


@cli.group(cls=PolyaGroup)
def codec() -> None:
    """Convert between 2D walks and sign-string pairs."""


@codec.command()
@click.option("--walk", required=True, help="2D walk over RLUD")
@with_settings
def encode(settings: Settings, walk: str) -> None:
    """Walk → sign pair."""
    w = Walk.parse(walk, 2)
    pair = encode_walk(w)
    emit(settings, "codec encode", {"walk": walk}, [{
        "walk": str(w), "pair": str(pair), "balanced": pair.balanced,
        "is_loop": classify(w) is not LoopClass.NOT_LOOP,
    }])


@codec.command()
@click.option("--pair", required=True, help="Sign pair 'a,b' over '+'/'-'")
@with_settings
def decode(settings: Settings, pair: str) -> None:
    """Sign pair → walk."""
    p = SignPair.parse(pair)
    w = decode_pair(p)
    emit(settings, "codec decode", {"pair": pair}, [{
        "walk": str(w), "pair": str(p), "balanced": p.balanced,
        "is_loop": classify(w) is not LoopClass.NOT_LOOP,
    }])


# ── Monte Carlo ───────────────────────────────────────────────────────────────

@cli.command()
@DIM
@click.option("--steps", type=int, required=True, help="Step budget L (even, >= 2)")
@click.option("--samples", type=int, required=True, help="Number of walks S")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--workers", type=int, default=None, help="Stream count W [config: montecarlo.workers]")
@with_settings
def simulate(settings: Settings, dim: int, steps: int, samples: int, seed: int,
             workers: int | None) -> None:
    """Estimate P(return to origin within L steps)."""
    cfg = McConfig(dimension=dim, max_steps=steps, samples=samples, seed=seed,
                   streams=workers or settings.mc_workers)
    estimate = ReturnSimulator(settings).run(cfg)
    emit(settings, "simulate", cfg.to_dict(), [estimate.to_dict()])


@cli.command("mc-compare")
@DIM
@click.option("--terms", type=int, required=True, help="N: compares against exact r_N with L = 2N")
@click.option("--samples", type=int, default=100_000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--workers", type=int, default=None)
@with_settings
def mc_compare(settings: Settings, dim: int, terms: int, samples: int, seed: int,
               workers: int | None) -> None:
    """Monte Carlo estimate against the exact partial sum, in stderr units."""
    comparison = estimate_vs_exact(dim, terms, samples, seed,
                                   streams=workers or settings.mc_workers, settings=settings)
    emit(settings, "mc-compare",
         {"dim": dim, "terms": terms, "samples": samples, "seed": seed},
         [comparison.to_dict()])


# ── Verification ──────────────────────────────────────────────────────────────

@cli.command("verify-paper")
@click.option("--checks", type=click.Path(exists=True, dir_okay=False),
              default=str(DEFAULT_CHECKS), show_default=False,
              help="Check catalogue (YAML)")
@with_settings
def verify_paper(settings: Settings, checks: str) -> None:
    """Run every catalogued claim and print one pass/fail record per check."""
    outcome = PaperVerifier(checks, settings).evaluate()
    emit(settings, "verify-paper", {"checks": checks},
         (c.to_dict() for c in outcome.checks))
    passed = len(outcome.checks) - len(outcome.failures)
    click.echo(f"{passed}/{len(outcome.checks)} checks passed", err=True)
    if not outcome.passed:
        sys.exit(outcome.exit_code())


def main() -> None:
    cli(prog_name="polya")


if __name__ == "__main__":
    main()
