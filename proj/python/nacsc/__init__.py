"""Spectral clustering on network-adjusted covariates.

Thin Python surface over the C++ core: build the adjusted covariate matrix,
embed it spectrally, cluster, evaluate against ground truth, and draw synthetic
benchmark instances from the degree-corrected blockmodel with covariates.
"""

from ._core import (
    NacscClassificationError,
    NacscConvergenceError,
    NacscDimensionError,
    NacscDomainError,
    NacscError,
    NacscParseError,
    NacscRankDeficiencyError,
    __version__,
    adjusted_covariates,
    align_error,
    cluster,
    default_h_grid,
    embed,
    generate_benchmark,
    kmeans,
    row_normalize,
    subset_error,
)

__all__ = [
    "NacscClassificationError",
    "NacscConvergenceError",
    "NacscDimensionError",
    "NacscDomainError",
    "NacscError",
    "NacscParseError",
    "NacscRankDeficiencyError",
    "__version__",
    "adjusted_covariates",
    "align_error",
    "cluster",
    "default_h_grid",
    "embed",
    "generate_benchmark",
    "kmeans",
    "row_normalize",
    "subset_error",
]
