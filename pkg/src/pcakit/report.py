"""Analysis report assembly: dataset summary, fitted model(s), diagonalization
diagnostics, and cross-route agreement when both routes run."""

from __future__ import annotations

import numpy as np

from .pca import Dataset, PcaModel, center, covariance_matrix, explained_variance_ratio, model_to_dict

REPORT_SCHEMA_VERSION = 1

# Variance gap (relative to total variance) above which a component direction
# is considered unique and comparable across routes.
SEPARATION_REL = 1e-6


def projected_covariance_offdiag(model: PcaModel, dataset: Dataset) -> dict:
    """Max off-diagonal of P @ C_x @ Pᵀ, absolute and relative to its trace."""
    centered, _ = center(dataset)
    c = covariance_matrix(centered, model.normalization)
    cy = model.components.data @ c.data @ model.components.data.T
    off = cy - np.diag(np.diag(cy))
    max_off = float(np.max(np.abs(off)))
    trace = float(np.trace(cy))
    return {
        "max_offdiag": max_off,
        "max_offdiag_over_trace": max_off / trace if trace > 0 else None,
    }


def separated_rows(variances: np.ndarray, rel: float = SEPARATION_REL) -> np.ndarray:
    """Boolean mask of components whose variance is isolated from its neighbors."""
    v = np.asarray(variances, dtype=float)
    total = float(np.sum(v))
    if total <= 0:
        return np.zeros(len(v), dtype=bool)
    gap = rel * total
    mask = np.ones(len(v), dtype=bool)
    for i in range(len(v)):
        if i > 0 and abs(v[i - 1] - v[i]) < gap:
            mask[i] = mask[i - 1] = False
        if i + 1 < len(v) and abs(v[i] - v[i + 1]) < gap:
            mask[i] = mask[i + 1] = False
    return mask


def route_agreement(a: PcaModel, b: PcaModel) -> dict:
    """Sign-aligned deltas between two fits of the same dataset."""
    total = float(np.sum(a.variances))
    var_delta = float(np.max(np.abs(a.variances - b.variances)))
    mask = separated_rows(a.variances) & separated_rows(b.variances)
    dots = []
    comp_delta = 0.0
    for i in np.flatnonzero(mask):
        pa = a.components.data[i]
        pb = b.components.data[i]
        dot = float(pa @ pb)
        dots.append(abs(dot))
        aligned = pb if dot >= 0 else -pb
        comp_delta = max(comp_delta, float(np.max(np.abs(pa - aligned))))
    return {
        "max_variance_delta": var_delta,
        "max_variance_delta_over_trace": var_delta / total if total > 0 else None,
        "compared_components": int(mask.sum()),
        "min_aligned_dot": min(dots) if dots else None,
        "max_component_delta": comp_delta if dots else None,
    }


def build_report(dataset: Dataset, fits: list[tuple[PcaModel, float]]) -> dict:
    """fits: (model, fit_seconds) pairs, in the order they were run."""
    models = []
    for model, seconds in fits:
        models.append(
            {
                "model": model_to_dict(model),
                "explained_variance_ratio": [float(x) for x in explained_variance_ratio(model)],
                "diagonalization": projected_covariance_offdiag(model, dataset),
                "fit_seconds": seconds,
            }
        )
    report = {
        "version": REPORT_SCHEMA_VERSION,
        "dataset": {"m": dataset.m, "n": dataset.n, "names": list(dataset.names)},
        "models": models,
    }
    if len(fits) == 2:
        report["route_agreement"] = route_agreement(fits[0][0], fits[1][0])
    return report
