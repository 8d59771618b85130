"""Exact truncated power series over the integers."""
from series.count_series import (
    CountSeries,
    loops_from_simple,
    series_mul,
    series_reciprocal,
    simple_from_loops,
)

__all__ = [
    "CountSeries",
    "loops_from_simple",
    "series_mul",
    "series_reciprocal",
    "simple_from_loops",
]
