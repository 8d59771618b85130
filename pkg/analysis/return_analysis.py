"""
Return Analysis — closed forms, weighted series and return probabilities.

Weights: a walk of length 2n has probability (2d)^(−2n), so the weighted
coefficients are b_n = B_n / 4^n (1D) or B_n / 16^n (2D), and likewise
p_n for simple loops. The return probability is r = Σ p_n; its partial
sums r_N are computed exactly (rationals) up to the exact threshold and
in floats beyond it.

Produces:
  • WeightedCoefficient / ReturnProbability / AsymptoticReport dataclasses
  • finite-N checks standing in for the limit statements:
    divergence of Σ b_n and r_N ≥ 1 − 1/Σ_{n≤N} b_n
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb
from typing import Any

import numpy as np
from scipy.special import gammaln

from series.count_series import CountSeries, simple_from_loops
from utils.errors import DomainError, ResourceLimitError
from utils.logger import get_logger
from utils.settings import load_settings
from walks.lattice_walks import check_dimension

log = get_logger(__name__)


class Mode(str, Enum):
    EXACT = "exact"
    FLOAT = "float"


def render_number(value: Fraction | float | int) -> str | float:
    """``"p/q"`` for rationals, decimal string for integers, floats as is."""
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, int):
        return str(value)
    return float(value)


def weight_base(dimension: int) -> int:
    """(2d)²: the weight divisor per unit of half-length."""
    check_dimension(dimension)
    return (2 * dimension) ** 2


def _check_index(name: str, n: int, minimum: int = 0) -> None:
    if n < minimum:
        raise DomainError(f"{name} must be >= {minimum}, got {n}")


# ── Result dataclasses ────────────────────────────────────────────────────────

@dataclass(frozen=True)
class WeightedCoefficient:
    """b_n = B_n/(2d)^{2n} (or p_n), exact or float."""

    n: int
    value: Fraction | float
    mode: Mode

    def to_dict(self) -> dict[str, Any]:
        return {"n": self.n, "value": render_number(self.value), "mode": self.mode.value}


@dataclass(frozen=True)
class ReturnProbability:
    """Partial sum r_N = Σ_{n=1..N} p_n."""

    dimension: int
    terms: int
    value: Fraction | float
    mode: Mode

    def to_dict(self) -> dict[str, Any]:
        return {
            "dimension": self.dimension,
            "terms":     self.terms,
            "mode":      self.mode.value,
            "value":     render_number(self.value),
            "approx":    float(self.value),
        }


@dataclass(frozen=True)
class AsymptoticReport:
    """b_n against the prediction 1/√(πn) (1D) or 1/(πn) (2D)."""

    dimension: int
    n: int
    weighted_coefficient: float
    predicted: float
    ratio: float

    def to_dict(self) -> dict[str, Any]:
        return {
            "dimension":            self.dimension,
            "n":                    self.n,
            "weighted_coefficient": self.weighted_coefficient,
            "predicted":            self.predicted,
            "ratio":                self.ratio,
        }


@dataclass(frozen=True)
class IdentityBounds:
    """r_N squeezed between 1 − 1/Σ_{n≤N} b_n and 1."""

    dimension: int
    terms: int
    return_probability: Fraction | float
    lower_bound: Fraction | float
    mode: Mode

    @property
    def holds(self) -> bool:
        return self.lower_bound <= self.return_probability <= 1

    def to_dict(self) -> dict[str, Any]:
        return {
            "dimension":          self.dimension,
            "terms":              self.terms,
            "mode":               self.mode.value,
            "return_probability": render_number(self.return_probability),
            "lower_bound":        render_number(self.lower_bound),
            "holds":              self.holds,
        }


@dataclass(frozen=True)
class GeneratingFunctionValues:
    """Truncated b(x), p(x) at 0 < x < 1 and the residual of p = 1 − 1/b."""

    dimension: int
    x: float
    terms: int
    b_value: float
    p_value: float

    @property
    def residual(self) -> float:
        return abs(self.p_value - (1.0 - 1.0 / self.b_value))

    def to_dict(self) -> dict[str, Any]:
        return {
            "dimension": self.dimension,
            "x":         self.x,
            "terms":     self.terms,
            "b":         self.b_value,
            "p":         self.p_value,
            "residual":  self.residual,
        }


# ── Exact counts ──────────────────────────────────────────────────────────────

def closed_form_loop_count(dimension: int, n: int) -> int:
    """B_n = C(2n, n) in 1D and C(2n, n)² in 2D."""
    check_dimension(dimension)
    _check_index("half-length", n)
    return comb(2 * n, n) ** dimension


def _resolve_order(order: int | None) -> int:
    order = load_settings().series_order if order is None else order
    _check_index("series order", order)
    return order


def loop_count_series(dimension: int, order: int | None = None) -> CountSeries:
    """B(t) truncated at ``order`` (default: the configured series order) from the closed form."""
    order = _resolve_order(order)
    return CountSeries.from_coefficients(
        closed_form_loop_count(dimension, n) for n in range(order + 1)
    )


def simple_loop_counts(dimension: int, order: int | None = None) -> CountSeries:
    """P(t) = 1 − 1/B(t) truncated at ``order``."""
    return simple_from_loops(loop_count_series(dimension, order))


def constant_term_loop_counts(dimension: int, order: int | None = None) -> list[int]:
    """
    B_0..B_order as constant terms of (z + 1/z)^{2n}.

    The Laurent polynomial is advanced one step at a time with exact
    integers; in 2D the rotated coordinates x − y and x + y move as two
    independent 1D walks, so the 2D count is the square of the 1D one.
    """
    check_dimension(dimension)
    order = _resolve_order(order)
    row = [1]
    counts = [1]
    for step in range(1, 2 * order + 1):
        padded = [0, 0] + row + [0, 0]
        row = [padded[i] + padded[i + 2] for i in range(len(row) + 2)]
        if step % 2 == 0:
            counts.append(row[len(row) // 2])
    return [c ** dimension for c in counts]


# ── Weighted coefficients ─────────────────────────────────────────────────────

def weighted_loop_coefficients(dimension: int, terms: int) -> np.ndarray:
    """
    b_0..b_terms in float via w_n = w_{n−1}·((2n−1)/(2n))^d.

    The ratio recurrence keeps every value in (0, 1] without forming
    big binomials.
    """
    check_dimension(dimension)
    _check_index("terms", terms)
    n = np.arange(1, terms + 1, dtype=np.float64)
    ratios = ((2.0 * n - 1.0) / (2.0 * n)) ** dimension
    return np.concatenate(([1.0], np.cumprod(ratios)))


def weighted_loop_coeff(
    dimension: int,
    n: int,
    mode: Mode | str = Mode.EXACT,
) -> WeightedCoefficient:
    mode = Mode(mode)
    _check_index("index", n)
    if mode is Mode.EXACT:
        value: Fraction | float = Fraction(closed_form_loop_count(dimension, n), weight_base(dimension) ** n)
    else:
        value = float(weighted_loop_coefficients(dimension, n)[n])
    return WeightedCoefficient(n=n, value=value, mode=mode)


def weighted_simple_coefficients(dimension: int, terms: int) -> list[float]:
    """
    p_0..p_terms in float from p_n = b_n − Σ_{k=1..n−1} p_k b_{n−k}.

    Every summand is non-negative and at most 1. Each inner sum is
    correctly rounded, so the result does not depend on summation order.
    """
    b = weighted_loop_coefficients(dimension, terms)
    p = np.zeros(terms + 1, dtype=np.float64)
    for n in range(1, terms + 1):
        cross = math.fsum((p[1:n] * b[n - 1:0:-1]).tolist())
        p[n] = b[n] - cross
    return p.tolist()


def coefficient_ratio(dimension: int, n: int) -> float:
    """b_{n+1}/b_n = ((2n+1)/(2n+2))^d; tends to 1 (radius of convergence one)."""
    check_dimension(dimension)
    _check_index("index", n)
    return float(Fraction(2 * n + 1, 2 * n + 2) ** dimension)


# ── Return probability ────────────────────────────────────────────────────────

def _resolve_threshold(exact_threshold: int | None) -> int:
    return load_settings().exact_threshold if exact_threshold is None else exact_threshold


def return_probability(
    dimension: int,
    terms: int,
    mode: Mode | str = Mode.EXACT,
    exact_threshold: int | None = None,
) -> ReturnProbability:
    """r_N = Σ_{n=1..N} P_n/(2d)^{2n}."""
    mode = Mode(mode)
    check_dimension(dimension)
    _check_index("terms", terms, 1)

    if mode is Mode.EXACT:
        threshold = _resolve_threshold(exact_threshold)
        if terms > threshold:
            raise ResourceLimitError(
                f"exact return probability limited to N <= {threshold}, got {terms}; "
                "use float mode"
            )
        simple = simple_loop_counts(dimension, terms)
        base = weight_base(dimension)
        value: Fraction | float = sum(
            (Fraction(simple[n], base ** n) for n in range(1, terms + 1)),
            Fraction(0),
        )
    else:
        value = math.fsum(weighted_simple_coefficients(dimension, terms)[1:])

    log.info("r_%d (%dD, %s) = %s", terms, dimension, mode.value, value)
    return ReturnProbability(dimension=dimension, terms=terms, value=value, mode=mode)


# ── Asymptotics and divergence ────────────────────────────────────────────────

def asymptotic_ratio(dimension: int, n: int) -> AsymptoticReport:
    """
    b_n divided by (πn)^{−d/2}, evaluated through log-gamma.

    log b_n = d·(lnΓ(2n+1) − 2 lnΓ(n+1) − 2n ln 2).
    """
    check_dimension(dimension)
    _check_index("index", n, 1)
    log_b = dimension * (gammaln(2 * n + 1) - 2.0 * gammaln(n + 1) - 2 * n * np.log(2.0))
    log_pred = -0.5 * dimension * np.log(np.pi * n)
    return AsymptoticReport(
        dimension=dimension,
        n=n,
        weighted_coefficient=float(np.exp(log_b)),
        predicted=float(np.exp(log_pred)),
        ratio=float(np.exp(log_b - log_pred)),
    )


def weighted_loop_partial_sum(dimension: int, terms: int) -> float:
    """Σ_{n=0..N} b_n; grows like 2√(N/π) in 1D and (ln N)/π in 2D."""
    return math.fsum(weighted_loop_coefficients(dimension, terms).tolist())


def identity_bounds(
    dimension: int,
    terms: int,
    exact_threshold: int | None = None,
) -> IdentityBounds:
    """
    r_N together with its lower bound 1 − 1/Σ_{n≤N} b_n.

    Summing b_n = Σ_k p_k b_{n−k} over n = 1..N gives
    Σ_{n≤N} b_n − 1 ≤ r_N · Σ_{n≤N} b_n, hence the bound.
    Exact below the threshold, float above it.
    """
    check_dimension(dimension)
    _check_index("terms", terms, 1)
    if terms <= _resolve_threshold(exact_threshold):
        r = return_probability(dimension, terms, Mode.EXACT, exact_threshold).value
        base = weight_base(dimension)
        b_sum = sum(
            (Fraction(closed_form_loop_count(dimension, n), base ** n) for n in range(terms + 1)),
            Fraction(0),
        )
        return IdentityBounds(dimension, terms, r, 1 - 1 / b_sum, Mode.EXACT)
    r_float = return_probability(dimension, terms, Mode.FLOAT).value
    lower = 1.0 - 1.0 / weighted_loop_partial_sum(dimension, terms)
    return IdentityBounds(dimension, terms, r_float, lower, Mode.FLOAT)


def recurrence_identity_check(
    dimension: int,
    terms: int,
    exact_threshold: int | None = None,
) -> bool:
    """1 − 1/Σ_{n≤N} b_n ≤ r_N ≤ 1."""
    return identity_bounds(dimension, terms, exact_threshold).holds


def generating_function_values(dimension: int, x: float, terms: int) -> GeneratingFunctionValues:
    """Evaluate truncated b(x) and p(x) inside the unit disc."""
    if not 0.0 < x < 1.0:
        raise DomainError(f"x must lie strictly between 0 and 1, got {x}")
    _check_index("terms", terms, 1)
    powers = np.power(x, np.arange(terms + 1, dtype=np.float64))
    b = weighted_loop_coefficients(dimension, terms)
    p = np.asarray(weighted_simple_coefficients(dimension, terms))
    return GeneratingFunctionValues(
        dimension=dimension,
        x=x,
        terms=terms,
        b_value=math.fsum((b * powers).tolist()),
        p_value=math.fsum((p * powers).tolist()),
    )
