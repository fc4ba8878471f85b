"""Principal component analysis end to end: covariance computation, the
eigenvector route, the SVD route, projection, reconstruction, and the
versioned model document used by the CLI.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .eigen import clamp_negligible_negatives, jacobi_eigen_symmetric
from .matrix import Matrix, complete_orthonormal_basis, gram, is_orthogonal, transpose
from .svd import gram_eigenbasis, numerical_rank

POPULATION = "population"  # divide by n
SAMPLE = "sample"  # divide by n - 1
_NORMALIZATIONS = (POPULATION, SAMPLE)

ROUTE_EIGEN = "eigen"
ROUTE_SVD = "svd"
_ROUTES = (ROUTE_EIGEN, ROUTE_SVD)

MODEL_SCHEMA_VERSION = 1
CENTERED_ROW_MEAN_TOL = 1e-9


class ZeroVarianceError(ValueError):
    """The dataset is constant: PCA has no preferred directions."""


def _divisor(n: int, normalization: str) -> int:
    if normalization == POPULATION:
        return n
    if normalization == SAMPLE:
        return n - 1
    raise ValueError(f"unknown normalization {normalization!r}; expected one of {_NORMALIZATIONS}")


@dataclass(frozen=True)
class Dataset:
    """m measurement rows by n sample columns, with one unique name per row."""

    data: Matrix
    names: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "names", tuple(self.names))
        if self.data.cols < 2:
            raise ValueError(f"need at least 2 samples, got {self.data.cols}")
        if len(self.names) != self.data.rows:
            raise ValueError(
                f"{len(self.names)} names for {self.data.rows} measurement rows"
            )
        if any(not isinstance(name, str) or not name for name in self.names):
            raise ValueError("measurement names must be non-empty strings")
        if len(set(self.names)) != len(self.names):
            raise ValueError("measurement names must be unique")

    @property
    def m(self) -> int:
        return self.data.rows

    @property
    def n(self) -> int:
        return self.data.cols


@dataclass(frozen=True)
class PcaModel:
    """Fitted PCA basis: rows of components are the principal components."""

    mean: np.ndarray
    components: Matrix
    variances: np.ndarray
    route: str
    normalization: str
    names: tuple[str, ...]

    def __post_init__(self) -> None:
        mean = np.asarray(self.mean, dtype=float)
        variances = np.asarray(self.variances, dtype=float)
        mean.setflags(write=False)
        variances.setflags(write=False)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "variances", variances)
        object.__setattr__(self, "names", tuple(self.names))
        m = self.components.rows
        if self.components.cols != m:
            raise ValueError("components must be square (m principal components of length m)")
        if mean.shape != (m,) or variances.shape != (m,) or len(self.names) != m:
            raise ValueError("mean, variances, and names must all have length m")
        if self.route not in _ROUTES:
            raise ValueError(f"unknown route {self.route!r}; expected one of {_ROUTES}")
        _divisor(2, self.normalization)  # validates the tag
        if np.any(variances < 0.0):
            raise ValueError("variances must be nonnegative")
        if np.any(np.diff(variances) > 0.0):
            raise ValueError("variances must be sorted descending")
        if not is_orthogonal(self.components, 1e-10):
            raise ValueError("components matrix is not orthonormal within 1e-10")

    @property
    def m(self) -> int:
        return self.components.rows


def covariance(a: np.ndarray, b: np.ndarray, normalization: str = POPULATION) -> float:
    """Covariance of two zero-mean vectors as a scaled dot product."""
    av = np.asarray(a, dtype=float).ravel()
    bv = np.asarray(b, dtype=float).ravel()
    if av.size != bv.size:
        raise ValueError(f"length mismatch: {av.size} vs {bv.size}")
    if av.size < 2:
        raise ValueError("need at least 2 samples")
    return float(av @ bv) / _divisor(av.size, normalization)


def center(d: Dataset) -> tuple[Dataset, np.ndarray]:
    """Subtract each measurement row's mean; returns the centered data and the means."""
    means = d.data.data.mean(axis=1)
    return Dataset(Matrix(d.data.data - means[:, None]), d.names), means


def covariance_matrix(d: Dataset, normalization: str = POPULATION) -> Matrix:
    """m x m covariance matrix of a centered dataset (exactly symmetric)."""
    worst = float(np.max(np.abs(d.data.data.mean(axis=1))))
    if worst > CENTERED_ROW_MEAN_TOL:
        raise ValueError(
            f"rows are not centered: max |row mean| = {worst:.3e} exceeds "
            f"{CENTERED_ROW_MEAN_TOL:.0e}; call center() first"
        )
    div = _divisor(d.n, normalization)
    return Matrix(gram(transpose(d.data)).data / div)


def _checked_variances(raw: np.ndarray) -> np.ndarray:
    vals = clamp_negligible_negatives(raw)
    if np.any(vals < 0.0):
        worst = float(np.min(vals))
        raise ValueError(f"covariance eigenvalue {worst:.3e} is significantly negative")
    return vals


def fit_eigen(d: Dataset, normalization: str = POPULATION) -> PcaModel:
    """Fit by eigendecomposing the covariance matrix; components are Eᵀ rows."""
    centered, mean = center(d)
    c = covariance_matrix(centered, normalization)
    if float(np.trace(c.data)) <= 0.0:
        raise ZeroVarianceError("dataset has zero total variance; remove constant data")
    dec = jacobi_eigen_symmetric(c)
    return PcaModel(
        mean=mean,
        components=transpose(dec.eigenvectors),
        variances=_checked_variances(dec.eigenvalues),
        route=ROUTE_EIGEN,
        normalization=normalization,
        names=d.names,
    )


def fit_svd(d: Dataset, normalization: str = POPULATION) -> PcaModel:
    """Fit through the singular value decomposition of y = xᵀ / sqrt(divisor).

    The columns of y's row-space basis are the principal components and the
    squared singular values are the per-component variances; the contract is
    identical to fit_eigen.
    """
    centered, mean = center(d)
    div = _divisor(d.n, normalization)
    y = Matrix(centered.data.data.T / math.sqrt(div))
    v_full, sigma = gram_eigenbasis(y)
    r, _ = numerical_rank(sigma)
    variances = np.array([sigma[i] ** 2 if i < r else 0.0 for i in range(d.m)])
    if float(np.sum(variances)) <= 0.0:
        raise ZeroVarianceError("dataset has zero total variance; remove constant data")
    v_vecs = complete_orthonormal_basis([v_full.data[:, i] for i in range(r)], dim=d.m)
    return PcaModel(
        mean=mean,
        components=Matrix(np.vstack(v_vecs)),
        variances=variances,
        route=ROUTE_SVD,
        normalization=normalization,
        names=d.names,
    )


def project(model: PcaModel, d: Dataset) -> Matrix:
    """Change of basis y = components @ (x - mean)."""
    if d.m != model.m:
        raise ValueError(
            f"dataset has {d.m} measurement rows but the model expects {model.m}"
        )
    return Matrix(model.components.data @ (d.data.data - model.mean[:, None]))


def reconstruct(model: PcaModel, y: Matrix, k: int) -> Matrix:
    """Invert the projection from the first k components: componentsᵀ @ y_k + mean."""
    m = model.m
    if not 0 <= k <= m:
        raise ValueError(f"k={k} exceeds the number of components m={m}")
    if y.rows < k:
        raise ValueError(f"projected data has {y.rows} rows, fewer than k={k}")
    padded = np.zeros((m, y.cols))
    padded[:k, :] = y.data[:k, :]
    return Matrix(model.components.data.T @ padded + model.mean[:, None])


def explained_variance_ratio(model: PcaModel) -> np.ndarray:
    total = float(np.sum(model.variances))
    if total <= 0.0:
        raise ZeroVarianceError("total variance is zero; ratios are undefined")
    return model.variances / total


def model_to_dict(model: PcaModel) -> dict:
    """Versioned JSON-ready document for a fitted model."""
    return {
        "version": MODEL_SCHEMA_VERSION,
        "route": model.route,
        "normalization": model.normalization,
        "names": list(model.names),
        "mean": [float(x) for x in model.mean],
        "variances": [float(x) for x in model.variances],
        "components": model.components.to_rows(),
    }


def model_from_dict(doc: dict) -> PcaModel:
    if not isinstance(doc, dict):
        raise ValueError("model document must be a JSON object")
    missing = [
        key
        for key in ("version", "route", "normalization", "names", "mean", "variances", "components")
        if key not in doc
    ]
    if missing:
        raise ValueError(f"model document is missing fields: {', '.join(missing)}")
    if doc["version"] != MODEL_SCHEMA_VERSION:
        raise ValueError(
            f"unsupported model version {doc['version']!r}; expected {MODEL_SCHEMA_VERSION}"
        )
    return PcaModel(
        mean=np.asarray(doc["mean"], dtype=float),
        components=Matrix(doc["components"]),
        variances=np.asarray(doc["variances"], dtype=float),
        route=doc["route"],
        normalization=doc["normalization"],
        names=tuple(str(name) for name in doc["names"]),
    )
