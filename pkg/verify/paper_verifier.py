"""
Paper Verifier — evaluates the claim catalogue in ``config/paper_checks.yaml``.

Each check names an operation from ``OPERATIONS``, its arguments, and an
operator/expected pair. Every check runs (no short-circuit) and the run
passes only if all of them do.

Usage (CLI)::

    python -m verify.paper_verifier

Usage (as library)::

    from verify.paper_verifier import PaperVerifier
    result = PaperVerifier().evaluate()
    print(result.passed)  # True
"""

from __future__ import annotations

import sys
import time
from collections.abc import Callable
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import yaml

from analysis.return_analysis import (
    Mode,
    asymptotic_ratio,
    closed_form_loop_count,
    coefficient_ratio,
    loop_count_series,
    recurrence_identity_check,
    return_probability,
    simple_loop_counts,
    weighted_loop_partial_sum,
)
from bijection.sign_bijection import SignPair, decode_pair, encode_walk
from utils.errors import DomainError
from utils.logger import get_logger
from utils.settings import Settings, load_settings
from walks.lattice_walks import (
    Walk,
    check_enumeration_cap,
    enumerate_loop_count,
    enumerate_simple_loop_count,
)

log = get_logger(__name__)

ROOT = Path(__file__).resolve().parent.parent
DEFAULT_CHECKS = ROOT / "config" / "paper_checks.yaml"


# ── Operations ────────────────────────────────────────────────────────────────
#
# Every operation takes the resolved Settings first, so caps, thresholds and
# the series order follow the same flag > env > YAML precedence as the CLI.

def _loop_count_agreement(s: Settings, dim: int, n_max: int) -> bool:
    cap = s.cap_for(dim)
    check_enumeration_cap(dim, n_max, cap)
    return all(
        enumerate_loop_count(dim, n, cap=cap) == closed_form_loop_count(dim, n)
        for n in range(n_max + 1)
    )


def _convolution_identity(s: Settings, dim: int, order: int | None = None) -> bool:
    order = s.series_order if order is None else order
    b = loop_count_series(dim, order)
    p = simple_loop_counts(dim, order)
    return all(
        b[n] == sum(p[k] * b[n - k] for k in range(1, n + 1))
        for n in range(1, order + 1)
    )


def _weighted_partial_sum_growth(s: Settings, dim: int, from_terms: int, to_terms: int) -> float:
    return weighted_loop_partial_sum(dim, to_terms) - weighted_loop_partial_sum(dim, from_terms)


OPERATIONS: dict[str, Callable[..., Any]] = {
    "simple_loop_count_series":    lambda s, dim, n: simple_loop_counts(dim, n)[n],
    "simple_loop_count_enumerate": lambda s, dim, n: enumerate_simple_loop_count(dim, n, cap=s.cap_for(dim)),
    "decode_pair":                 lambda s, pair: str(decode_pair(SignPair.parse(pair))),
    "encode_walk":                 lambda s, walk: str(encode_walk(Walk.parse(walk, 2))),
    "loop_count_agreement":        _loop_count_agreement,
    "convolution_identity":        _convolution_identity,
    "return_probability_float":    lambda s, dim, terms: return_probability(dim, terms, Mode.FLOAT).value,
    "asymptotic_ratio":            lambda s, dim, n: asymptotic_ratio(dim, n).ratio,
    "weighted_partial_sum_growth": _weighted_partial_sum_growth,
    "coefficient_ratio":           lambda s, dim, n: coefficient_ratio(dim, n),
    "identity_check":              lambda s, dim, terms: recurrence_identity_check(
        dim, terms, exact_threshold=s.exact_threshold
    ),
}


# ── Result dataclasses ────────────────────────────────────────────────────────

@dataclass
class CheckResult:
    """Outcome of one catalogue entry."""

    check_id: str
    name: str
    claim: str
    operator: str
    expected: Any
    observed: Any = None
    passed: bool = False
    error: str = ""
    seconds: float = 0.0

    def to_dict(self) -> dict[str, Any]:
        return {
            "id":       self.check_id,
            "name":     self.name,
            "claim":    self.claim,
            "operator": self.operator,
            "expected": self.expected,
            "observed": self.observed,
            "passed":   self.passed,
            "error":    self.error,
            "seconds":  round(self.seconds, 4),
        }


@dataclass
class VerificationResult:
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def exit_code(self) -> int:
        """Shell exit code: 0 = every check passed, 1 = at least one failed."""
        return 0 if self.passed else 1


# ── Engine ────────────────────────────────────────────────────────────────────

class PaperVerifier:
    """Runs every check of the catalogue and collects the outcomes."""

    def __init__(
        self,
        checks_path: str | Path = DEFAULT_CHECKS,
        settings: Settings | None = None,
    ) -> None:
        self.checks = self._load_checks(Path(checks_path))
        self.settings = settings or load_settings()

    @staticmethod
    def _load_checks(path: Path) -> list[dict]:
        with path.open() as fh:
            data = yaml.safe_load(fh) or {}
        checks = data.get("checks", [])
        for check in checks:
            if check.get("operation") not in OPERATIONS:
                raise DomainError(
                    f"check {check.get('id')!r} names unknown operation {check.get('operation')!r}"
                )
        return checks

    # ── Comparison ────────────────────────────────────────────────────────────

    @staticmethod
    def _matches(observed: Any, operator: str, expected: Any, tolerance: float = 0.0) -> bool:
        if operator == "eq":     return observed == expected
        if operator == "neq":    return observed != expected
        if operator == "lt":     return observed <  expected
        if operator == "lte":    return observed <= expected
        if operator == "gt":     return observed >  expected
        if operator == "gte":    return observed >= expected
        if operator == "within": return abs(observed - expected) <= tolerance
        raise DomainError(f"unknown operator {operator!r}")

    def _run(self, check: dict) -> CheckResult:
        result = CheckResult(
            check_id=check["id"],
            name=check.get("name", ""),
            claim=check.get("claim", ""),
            operator=check.get("operator", "eq"),
            expected=check.get("expected"),
        )
        start = time.perf_counter()
        try:
            result.observed = OPERATIONS[check["operation"]](self.settings, **check.get("args", {}))
            result.passed = self._matches(
                result.observed, result.operator, result.expected,
                float(check.get("tolerance", 0.0)),
            )
        except Exception as exc:
            # One broken catalogue entry must not abort the remaining checks.
            log.warning("check %s raised %s: %s", result.check_id, type(exc).__name__, exc)
            result.error = f"{type(exc).__name__}: {exc}"
        result.seconds = time.perf_counter() - start
        if isinstance(result.observed, float):
            result.observed = float(result.observed)
        log.debug("check %s: observed=%r passed=%s", result.check_id, result.observed, result.passed)
        return result

    def evaluate(self) -> VerificationResult:
        outcome = VerificationResult([self._run(check) for check in self.checks])
        log.info(
            "verified %d checks: %d passed, %d failed",
            len(outcome.checks), len(outcome.checks) - len(outcome.failures),
            len(outcome.failures),
        )
        return outcome

    # ── CLI report ────────────────────────────────────────────────────────────

    @staticmethod
    def report(outcome: VerificationResult) -> str:
        lines = [
            "╔══════════════════════════════════════════════════════════════╗",
            "║            RECURRENCE PROOF — VERIFICATION REPORT            ║",
            "╠══════════════════════════════════════════════════════════════╣",
        ]
        for c in outcome.checks:
            mark = "PASS" if c.passed else "FAIL"
            lines.append(f"║  {c.check_id}  {mark}  {c.name[:48]:<48}  ║")
        lines += [
            "╠══════════════════════════════════════════════════════════════╣",
            f"║  Overall           {'ALL CHECKS PASSED' if outcome.passed else 'FAILURES PRESENT':<42}║",
            "╚══════════════════════════════════════════════════════════════╝",
        ]
        return "\n".join(lines)


# ── CLI entry-point ───────────────────────────────────────────────────────────

def main() -> None:
    verifier = PaperVerifier()
    outcome = verifier.evaluate()
    print(verifier.report(outcome))
    sys.exit(outcome.exit_code())


if __name__ == "__main__":
    main()
