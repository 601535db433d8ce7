"""Exact and asymptotic enumeration of connected graphs by excess."""

from ._core import (
    __version__,
    c1_fit,
    connected_counts,
    core_counts,
    count,
    dominant_log10,
    exact_over_dominant,
    mgpos_weights,
    s_value,
    sgpos_counts,
    solve_saddle,
    tree_counts,
    verify,
    wright_coefficients,
)

__all__ = [
    "__version__",
    "c1_fit",
    "connected_counts",
    "core_counts",
    "count",
    "dominant_log10",
    "exact_over_dominant",
    "mgpos_weights",
    "s_value",
    "sgpos_counts",
    "solve_saddle",
    "tree_counts",
    "verify",
    "wright_coefficients",
]
