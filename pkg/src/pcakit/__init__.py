"""PCA from first principles: a hand-built symmetric eigensolver and SVD, the
two classic PCA routes on top of them, deterministic toy-data generators, and
a CSV-driven CLI."""

from .matrix import Matrix, complete_orthonormal_basis, is_orthogonal, multiply, transpose
from .pca import (
    Dataset,
    PcaModel,
    ZeroVarianceError,
    explained_variance_ratio,
    fit_eigen,
    fit_svd,
    project,
    reconstruct,
)

__version__ = "0.1.0"

__all__ = [
    "Matrix",
    "Dataset",
    "PcaModel",
    "ZeroVarianceError",
    "complete_orthonormal_basis",
    "explained_variance_ratio",
    "fit_eigen",
    "fit_svd",
    "is_orthogonal",
    "multiply",
    "project",
    "reconstruct",
    "transpose",
    "__version__",
]
