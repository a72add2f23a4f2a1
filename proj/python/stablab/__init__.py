"""Symmetric stable laws, heavy-tailed summands and ideal-metric convergence rates."""

from ._core import (
    BudgetError,
    DivergenceError,
    DoaModel,
    DomainError,
    NumericFailure,
    RateFit,
    StableParams,
    StrongDoaReport,
    cf_distance,
    ensemble,
    fit_slope,
    kappa_r,
    kappa_r_samples,
    power_gap,
    rate_constant,
    stable_cdf,
    stable_cf,
    stable_pdf,
    stable_sample,
    stable_sf,
    stable_tail,
    tail_constant,
    theoretical_slope,
    verify_strong_doa,
    wasserstein1,
)

__all__ = [name for name in dir() if not name.startswith("_")]
