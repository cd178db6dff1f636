"""Python front end for the on-off signal chain library."""

from ._onoff import (
    OnoffError,
    chain_transform,
    dense_bound,
    euler_ratio,
    exact_mean,
    exact_mean_rational,
    first_reception,
    frozen_search,
    harmonic_lower_bound,
    subset_formula,
    theta_case,
    tightness_bound,
    verify,
)

__all__ = [
    "OnoffError",
    "chain_transform",
    "dense_bound",
    "euler_ratio",
    "exact_mean",
    "exact_mean_rational",
    "first_reception",
    "frozen_search",
    "harmonic_lower_bound",
    "subset_formula",
    "theta_case",
    "tightness_bound",
    "verify",
]
