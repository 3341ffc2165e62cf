"""Convex hulls of planar random walks: geometry, simulation and limit constants."""

from ._core import (
    HullwalkError,
    __version__,
    area,
    batch_series,
    cauchy_perimeter,
    clt_test,
    convex_hull,
    enumerate_exact,
    estimate,
    expected_norm_gaussian,
    functional_series,
    goldman_bridge_variance,
    hull_functionals,
    limit_constants,
    martingale_decomposition_check,
    moments,
    normalize_model,
    partial_sum_pi,
    perimeter,
    rogers_shepp_second_moment,
    sample_path,
    variance_bounds,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
