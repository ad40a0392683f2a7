"""Adaptive approximation of non-decreasing functions with certified error."""

from ._core import (
    BoxCover,
    ConfigError,
    DegenerateInterval,
    DomainError,
    Error,
    Estimator,
    Measure,
    MonotoneFunction,
    ResolutionExhausted,
    ResourceError,
    Unmeterable,
    ValidationError,
    affine_error_bound_check,
    catalog,
    catalog_names,
    constructive_cover,
    cover_total,
    experiment_g,
    from_callable,
    integral,
    integrate,
    loglog_slope,
    lp_distance,
    lp_error,
    oracle_n,
    piecewise,
    run,
    run_fixed_budget,
    split_cover,
    worst_case_f,
)

__all__ = [name for name in dir() if not name.startswith("_")]
