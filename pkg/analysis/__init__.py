"""Closed forms, weighted series, return probabilities and asymptotics."""
from analysis.return_analysis import (
    AsymptoticReport,
    GeneratingFunctionValues,
    IdentityBounds,
    Mode,
    ReturnProbability,
    WeightedCoefficient,
    asymptotic_ratio,
    closed_form_loop_count,
    coefficient_ratio,
    constant_term_loop_counts,
    generating_function_values,
    identity_bounds,
    loop_count_series,
    recurrence_identity_check,
    return_probability,
    simple_loop_counts,
    weight_base,
    weighted_loop_coeff,
    weighted_loop_coefficients,
    weighted_loop_partial_sum,
    weighted_simple_coefficients,
)

__all__ = [
    "AsymptoticReport",
    "GeneratingFunctionValues",
    "IdentityBounds",
    "Mode",
    "ReturnProbability",
    "WeightedCoefficient",
    "asymptotic_ratio",
    "closed_form_loop_count",
    "coefficient_ratio",
    "constant_term_loop_counts",
    "generating_function_values",
    "identity_bounds",
    "loop_count_series",
    "recurrence_identity_check",
    "return_probability",
    "simple_loop_counts",
    "weight_base",
    "weighted_loop_coeff",
    "weighted_loop_coefficients",
    "weighted_loop_partial_sum",
    "weighted_simple_coefficients",
]
