"""Seeded Monte Carlo estimates of return-within-L-steps probabilities."""
from montecarlo.return_simulator import (
    Comparison,
    McConfig,
    McEstimate,
    ReturnSimulator,
    estimate_vs_exact,
    simulate_return,
)

__all__ = [
    "Comparison",
    "McConfig",
    "McEstimate",
    "ReturnSimulator",
    "estimate_vs_exact",
    "simulate_return",
]
