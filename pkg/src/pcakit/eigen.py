"""Symmetric eigendecomposition via cyclic Jacobi sweeps, plus a greedy
variance-maximization solver (power iteration with deflation) that serves as an
independent cross-check of the Jacobi route.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .matrix import Matrix, sign_fixed

SYMMETRY_TOL = 1e-10
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100
POWER_ITERS = 10_000
POWER_TOL = 1e-10

# Negative eigenvalues no larger than this fraction of the spectral radius are
# treated as roundoff on a positive-semidefinite input.
NEGLIGIBLE_NEG_REL = 1e-10


class ConvergenceError(RuntimeError):
    """An iterative solver failed to reach its tolerance."""

    def __init__(self, message: str, residual: float | None = None) -> None:
        super().__init__(message)
        self.residual = residual


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues sorted descending; column i of eigenvectors pairs with eigenvalues[i]."""

    eigenvalues: np.ndarray
    eigenvectors: Matrix

    def __post_init__(self) -> None:
        vals = np.asarray(self.eigenvalues, dtype=float)
        vals.setflags(write=False)
        object.__setattr__(self, "eigenvalues", vals)


def _check_square_symmetric(a: Matrix, what: str) -> np.ndarray:
    if a.rows != a.cols:
        raise ValueError(f"{what} requires a square matrix, got {a.rows}x{a.cols}")
    asym = float(np.max(np.abs(a.data - a.data.T)))
    if asym > SYMMETRY_TOL:
        raise ValueError(
            f"{what} requires a symmetric matrix; max |a_ij - a_ji| = {asym:.3e} "
            f"exceeds {SYMMETRY_TOL:.0e}"
        )
    # Work on an exactly-symmetric copy.
    return (a.data + a.data.T) / 2.0


def _offdiag_norm(a: np.ndarray) -> float:
    off = a.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.linalg.norm(off))


def jacobi_eigen_symmetric(
    a: Matrix, *, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS
) -> EigenDecomposition:
    """Diagonalize a symmetric matrix with cyclic Jacobi rotations.

    Sweeps visit every (p, q) pair in row order and apply a two-sided rotation
    that zeroes a[p, q]. Convergence is declared when the off-diagonal
    Frobenius norm falls below tol times its initial value. Eigenvalues come
    back sorted descending (stable on ties) with sign-fixed eigenvector
    columns.
    """
    work = _check_square_symmetric(a, "jacobi_eigen_symmetric")
    m = work.shape[0]
    e = np.eye(m)

    off0 = _offdiag_norm(work)
    threshold = tol * off0
    converged = off0 == 0.0
    sweeps = 0
    while not converged and sweeps < max_sweeps:
        for p in range(m - 1):
            for q in range(p + 1, m):
                apq = work[p, q]
                if apq == 0.0:
                    continue
                tau = (work[q, q] - work[p, p]) / (2.0 * apq)
                # Stable half-angle solve; for huge |tau| the sqrt saturates
                # and t underflows to a harmless no-op rotation.
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c

                col_p = work[:, p].copy()
                col_q = work[:, q].copy()
                work[:, p] = c * col_p - s * col_q
                work[:, q] = s * col_p + c * col_q
                row_p = work[p, :].copy()
                row_q = work[q, :].copy()
                work[p, :] = c * row_p - s * row_q
                work[q, :] = s * row_p + c * row_q
                work[p, q] = 0.0
                work[q, p] = 0.0

                e_p = e[:, p].copy()
                e_q = e[:, q].copy()
                e[:, p] = c * e_p - s * e_q
                e[:, q] = s * e_p + c * e_q
        sweeps += 1
        off = _offdiag_norm(work)
        if off <= threshold:
            converged = True
    if not converged:
        off = _offdiag_norm(work)
        raise ConvergenceError(
            f"Jacobi did not converge after {max_sweeps} sweeps; "
            f"off-diagonal norm {off:.3e} (target {threshold:.3e})",
            residual=off,
        )

    values = np.diag(work).copy()
    order = np.argsort(-values, kind="stable")
    values = values[order]
    vectors = e[:, order]
    for j in range(m):
        vectors[:, j] = sign_fixed(vectors[:, j])
    return EigenDecomposition(eigenvalues=values, eigenvectors=Matrix(vectors))


def clamp_negligible_negatives(values: np.ndarray, rel_tol: float = NEGLIGIBLE_NEG_REL) -> np.ndarray:
    """Zero out negative entries that are roundoff-small relative to max |value|."""
    vals = np.asarray(values, dtype=float).copy()
    scale = float(np.max(np.abs(vals))) if vals.size else 0.0
    mask = (vals < 0.0) & (np.abs(vals) <= rel_tol * scale)
    vals[mask] = 0.0
    return vals


def _project_out(w: np.ndarray, accepted: list[np.ndarray]) -> np.ndarray:
    if not accepted:
        return w
    b = np.vstack(accepted)
    for _ in range(2):
        w = w - b.T @ (b @ w)
    return w


def _deflated_start(m: int, accepted: list[np.ndarray]) -> np.ndarray:
    # The all-ones start can lie inside the accepted span; canonical basis
    # vectors are the deterministic fallback.
    candidates = [np.ones(m) / math.sqrt(m)]
    candidates += [np.eye(m)[i] for i in range(m)]
    for cand in candidates:
        w = _project_out(cand.copy(), accepted)
        norm = float(np.linalg.norm(w))
        if norm > 1e-8:
            return w / norm
    raise RuntimeError("no start vector found outside the accepted span")


def _rayleigh_ceiling(c: np.ndarray, accepted: list[np.ndarray], steps: int) -> float:
    """Estimate the largest eigenvalue of c restricted to the complement of accepted."""
    v = _deflated_start(c.shape[0], accepted)
    best = -math.inf
    for _ in range(steps):
        w = _project_out(c @ v, accepted)
        best = max(best, float(v @ w))
        norm = float(np.linalg.norm(w))
        if norm == 0.0:
            return max(best, 0.0)
        v = _project_out(w / norm, accepted)
        v_norm = float(np.linalg.norm(v))
        if v_norm == 0.0:
            return max(best, 0.0)
        v = v / v_norm
    return best


def greedy_max_variance_directions(
    c: Matrix, k: int, *, iters: int = POWER_ITERS, tol: float = POWER_TOL
) -> list[tuple[np.ndarray, float]]:
    """Pick k orthonormal directions of maximal quadratic form, one at a time.

    Each step maximizes v.T @ c @ v over unit vectors orthogonal to the
    directions already chosen, realized as power iteration on the deflated
    operator from a deterministic start (normalized all-ones, re-orthogonalized
    against the accepted set every iteration). Raises ConvergenceError when the
    iteration stalls or the remaining spectrum has no usable eigenvalue gap;
    jacobi_eigen_symmetric handles those spectra.
    """
    work = _check_square_symmetric(c, "greedy_max_variance_directions")
    m = work.shape[0]
    if not 0 <= k <= m:
        raise ValueError(f"k={k} must be between 0 and m={m}")
    scale = float(np.max(np.abs(work))) if m else 0.0
    if float(np.min(np.diag(work))) < -NEGLIGIBLE_NEG_REL * max(scale, 1.0):
        raise ValueError("matrix is not positive semidefinite: negative diagonal entry")

    accepted: list[np.ndarray] = []
    results: list[tuple[np.ndarray, float]] = []
    for step in range(k):
        v = _deflated_start(m, accepted)
        if m - len(accepted) == 1:
            # One direction left: it is forced up to sign, no iteration needed.
            lam = float(v @ work @ v)
            v = sign_fixed(v)
            accepted.append(v)
            results.append((v, lam))
            continue

        lam = 0.0
        residual = math.inf
        converged = False
        for _ in range(iters):
            w = _project_out(work @ v, accepted)
            norm = float(np.linalg.norm(w))
            if norm == 0.0:
                lam = 0.0
                converged = True
                break
            v = _project_out(w / norm, accepted)
            v = v / float(np.linalg.norm(v))
            u = _project_out(work @ v, accepted)
            lam = float(v @ u)
            residual = float(np.linalg.norm(u - lam * v))
            if residual <= tol * (1.0 + abs(lam)):
                converged = True
                break
        if not converged:
            raise ConvergenceError(
                f"power iteration stalled at step {step + 1} "
                f"(residual {residual:.3e} after {iters} iterations); "
                "use jacobi_eigen_symmetric for gap-free spectra",
                residual=residual,
            )

        gap_probe = _rayleigh_ceiling(work, accepted + [v], steps=min(iters, 200))
        gap = lam - gap_probe
        if gap <= tol * max(1.0, abs(lam)):
            raise ConvergenceError(
                f"eigenvalue gap {gap:.3e} at step {step + 1} is below tolerance; "
                "the maximizer is not unique — use jacobi_eigen_symmetric",
                residual=gap,
            )

        v = sign_fixed(v)
        accepted.append(v)
        results.append((v, lam))
    return results
