"""
Count Series — truncated formal power series with exact integer coefficients.

A series of order N carries the coefficients of t^0 .. t^N. Binary
operations truncate to the smaller order of their operands and never pad,
so no unknown coefficient is ever invented.

The loop series B(t) and simple-loop series P(t) satisfy

    B(t) = P(t)·B(t) + 1,   hence   P(t) = 1 − 1/B(t),

which is what :func:`simple_from_loops` and :func:`loops_from_simple`
compute.
"""

from __future__ import annotations

import json
from collections.abc import Iterable
from dataclasses import dataclass

from utils.errors import DomainError


@dataclass(frozen=True)
class CountSeries:
    """c_0 + c_1 t + … + c_N t^N, truncated at order N."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise DomainError("a series needs at least the constant coefficient")
        if any(not isinstance(c, int) or isinstance(c, bool) for c in self.coeffs):
            raise DomainError("series coefficients must be integers")

    # ── Constructors ──────────────────────────────────────────────────────────

    @classmethod
    def from_coefficients(cls, coeffs: Iterable[int]) -> "CountSeries":
        return cls(tuple(coeffs))

    @classmethod
    def constant(cls, value: int, order: int) -> "CountSeries":
        if order < 0:
            raise DomainError(f"series order must be >= 0, got {order}")
        return cls((value,) + (0,) * order)

    @classmethod
    def one(cls, order: int) -> "CountSeries":
        return cls.constant(1, order)

    # ── Accessors ─────────────────────────────────────────────────────────────

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> int:
        if not 0 <= n <= self.order:
            raise IndexError(f"coefficient t^{n} is beyond order {self.order}")
        return self.coeffs[n]

    def truncate(self, order: int) -> "CountSeries":
        if not 0 <= order <= self.order:
            raise DomainError(f"cannot truncate order {self.order} series to {order}")
        return CountSeries(self.coeffs[: order + 1])

    def to_json(self) -> str:
        """JSON array of decimal strings, index = power of t."""
        return json.dumps([str(c) for c in self.coeffs])

    # ── Arithmetic ────────────────────────────────────────────────────────────

    def _aligned(self, other: "CountSeries") -> tuple[tuple[int, ...], tuple[int, ...]]:
        order = min(self.order, other.order)
        return self.truncate(order).coeffs, other.truncate(order).coeffs

    def __add__(self, other: "CountSeries") -> "CountSeries":
        if not isinstance(other, CountSeries):
            return NotImplemented
        f, g = self._aligned(other)
        return CountSeries(tuple(x + y for x, y in zip(f, g)))

    def __sub__(self, other: "CountSeries") -> "CountSeries":
        if not isinstance(other, CountSeries):
            return NotImplemented
        f, g = self._aligned(other)
        return CountSeries(tuple(x - y for x, y in zip(f, g)))

    def __neg__(self) -> "CountSeries":
        return CountSeries(tuple(-c for c in self.coeffs))

    def __mul__(self, other: "CountSeries") -> "CountSeries":
        if not isinstance(other, CountSeries):
            return NotImplemented
        return series_mul(self, other)


# ── Operations ────────────────────────────────────────────────────────────────

def series_mul(f: CountSeries, g: CountSeries) -> CountSeries:
    """Cauchy product truncated to min(order_f, order_g)."""
    a, b = f._aligned(g)
    return CountSeries(tuple(
        sum(a[k] * b[n - k] for k in range(n + 1))
        for n in range(len(a))
    ))


def series_reciprocal(f: CountSeries) -> CountSeries:
    """
    g with f·g = 1 up to the order of f.

    g_0 = 1/c_0,  g_n = −(Σ_{k=1..n} c_k g_{n−k}) / c_0.  c_0 must be ±1 so
    every g_n stays an integer.
    """
    c = f.coeffs
    if c[0] not in (1, -1):
        raise DomainError(
            f"reciprocal needs constant term ±1 for exact integer coefficients, got {c[0]}"
        )
    unit = c[0]  # 1/c_0 == c_0 for a unit
    g = [unit]
    for n in range(1, len(c)):
        g.append(-unit * sum(c[k] * g[n - k] for k in range(1, n + 1)))
    return CountSeries(tuple(g))


def simple_from_loops(b: CountSeries) -> CountSeries:
    """P = 1 − 1/B; coefficient n is the simple-loop count P_n."""
    if b.coeffs[0] != 1:
        raise DomainError(f"loop series must start with B_0 = 1, got {b.coeffs[0]}")
    return CountSeries.one(b.order) - series_reciprocal(b)


def loops_from_simple(p: CountSeries) -> CountSeries:
    """B = 1/(1 − P); inverse of :func:`simple_from_loops`."""
    if p.coeffs[0] != 0:
        raise DomainError(f"simple-loop series must start with P_0 = 0, got {p.coeffs[0]}")
    return series_reciprocal(CountSeries.one(p.order) - p)
