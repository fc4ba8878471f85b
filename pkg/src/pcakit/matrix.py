"""Dense real matrices and the small set of exact-contract operations the solvers share.

Everything here is desk-scale by design: row-major float64 storage, no views,
no sparsity. Matrices are immutable after construction so they can be shared
freely between threads.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

# Default absolute tolerance on entries for checks in this module.
DEFAULT_TOL = 1e-12

# A fill-up candidate is accepted once its component outside the current span
# exceeds this norm.
FILL_RESIDUAL_MIN = 1e-6

# Input vectors handed to complete_orthonormal_basis may deviate from exact
# orthonormality by at most this much per pair.
ORTHONORMAL_INPUT_TOL = 1e-10


class Matrix:
    """Immutable dense real matrix, row-major, float64 entries."""

    __slots__ = ("_data",)

    def __init__(self, entries) -> None:
        arr = np.array(entries, dtype=float)
        if arr.ndim != 2:
            raise ValueError(f"matrix entries must be 2-D, got {arr.ndim}-D input")
        rows, cols = arr.shape
        if rows < 1 or cols < 1:
            raise ValueError(f"matrix must be at least 1x1, got {rows}x{cols}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("matrix entries must be finite (no NaN or infinity)")
        arr.setflags(write=False)
        self._data = arr

    @classmethod
    def identity(cls, m: int) -> "Matrix":
        return cls(np.eye(m))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(np.zeros((rows, cols)))

    @property
    def rows(self) -> int:
        return self._data.shape[0]

    @property
    def cols(self) -> int:
        return self._data.shape[1]

    @property
    def data(self) -> np.ndarray:
        """Read-only ndarray view of the entries."""
        return self._data

    def to_rows(self) -> list[list[float]]:
        return [[float(x) for x in row] for row in self._data]

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Matrix({self.rows}x{self.cols})"


def multiply(a: Matrix, b: Matrix) -> Matrix:
    """Standard matrix product a @ b."""
    if a.cols != b.rows:
        raise ValueError(
            f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}: "
            f"inner dimensions {a.cols} and {b.rows} differ"
        )
    return Matrix(a.data @ b.data)


def transpose(a: Matrix) -> Matrix:
    return Matrix(a.data.T)


def gram(a: Matrix) -> Matrix:
    """aᵀa with exact symmetry: the upper triangle is mirrored onto the lower."""
    g = a.data.T @ a.data
    return Matrix(np.triu(g) + np.triu(g, 1).T)


def is_orthogonal(a: Matrix, tol: float = DEFAULT_TOL) -> bool:
    """True iff max-abs entry of aᵀa - I is within tol. Requires a square input."""
    if a.rows != a.cols:
        raise ValueError(f"orthogonality is defined for square matrices, got {a.rows}x{a.cols}")
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    dev = a.data.T @ a.data - np.eye(a.rows)
    return bool(np.max(np.abs(dev)) <= tol)


def sign_fixed(v: np.ndarray) -> np.ndarray:
    """Flip v so its largest-magnitude entry is positive (first such entry on ties)."""
    idx = int(np.argmax(np.abs(v)))
    return -v if v[idx] < 0 else v


def complete_orthonormal_basis(
    partial: Sequence[np.ndarray], dim: int | None = None
) -> list[np.ndarray]:
    """Extend pairwise-orthonormal vectors to a full orthonormal basis of R^dim.

    The inputs are returned unchanged, followed by new unit vectors obtained by
    orthogonalizing the canonical basis vectors e1..e_m in index order against
    the accepted set; a candidate is kept when its residual norm exceeds
    FILL_RESIDUAL_MIN, then normalized and sign-fixed.
    """
    vecs = [np.asarray(v, dtype=float).ravel() for v in partial]
    if vecs:
        m = vecs[0].size
        if dim is not None and dim != m:
            raise ValueError(f"dim={dim} does not match vector length {m}")
    else:
        if dim is None:
            raise ValueError("dim is required when no partial vectors are given")
        m = int(dim)
    if m < 1:
        raise ValueError("basis dimension must be at least 1")
    for i, v in enumerate(vecs):
        if v.size != m:
            raise ValueError(f"vector {i} has length {v.size}, expected {m}")
        if not np.all(np.isfinite(v)):
            raise ValueError(f"vector {i} has non-finite entries")
    r = len(vecs)
    if r > m:
        raise ValueError(f"got {r} vectors for dimension {m}")

    if r:
        v_mat = np.column_stack(vecs)
        dev = np.abs(v_mat.T @ v_mat - np.eye(r))
        worst = np.unravel_index(int(np.argmax(dev)), dev.shape)
        if dev[worst] > ORTHONORMAL_INPUT_TOL:
            i, j = worst
            raise ValueError(
                f"input vectors are not orthonormal: worst pair ({i}, {j}) "
                f"deviates by {dev[worst]:.3e}"
            )

    basis = [v.copy() for v in vecs]
    for j in range(m):
        if len(basis) == m:
            break
        w = np.zeros(m)
        w[j] = 1.0
        if basis:
            b_mat = np.vstack(basis)
            # Two Gram-Schmidt passes keep the new vector orthogonal to ~1e-15.
            for _ in range(2):
                w = w - b_mat.T @ (b_mat @ w)
        norm = float(np.linalg.norm(w))
        if norm > FILL_RESIDUAL_MIN:
            basis.append(sign_fixed(w / norm))
    if len(basis) != m:
        raise RuntimeError("basis completion failed; inputs may span more than they claim")
    return basis
