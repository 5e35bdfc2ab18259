"""Poverty index estimation with estimated poverty lines."""

from ._core import (
    DegenerateError,
    ValidationError,
    __version__,
    delta,
    estimate,
    gamma_hat,
    j_fixed,
    j_relative,
    j_theoretical,
    proportionality_test,
    run_subcommand,
    sigma_hat,
    simulate,
    wald_test,
)

__all__ = [
    "DegenerateError",
    "ValidationError",
    "__version__",
    "delta",
    "estimate",
    "gamma_hat",
    "j_fixed",
    "j_relative",
    "j_theoretical",
    "proportionality_test",
    "run_subcommand",
    "sigma_hat",
    "simulate",
    "wald_test",
]
