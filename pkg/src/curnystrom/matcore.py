"""Dense linear-algebra substrate: SVD, pseudoinverse, projections, norms,
best rank-k truncation, and leverage scores.

All operations are pure functions of immutable float64 arrays. The numerical
rank cutoff is sigma_max * max(m, n) * machine-epsilon throughout, matching
the standard pseudoinverse convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

__all__ = [
    "TruncatedSvd",
    "LeverageScores",
    "MatrixNorms",
    "as_matrix",
    "rank_cutoff",
    "svd_full",
    "best_rank_k",
    "pinv",
    "project_onto_columns",
    "project_onto_rows",
    "leverage_scores",
    "norms",
]


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Validate and coerce input to a non-empty, finite, 2-D float64 array."""
    arr = np.asarray(a, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError(f"{name} must be non-empty, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def rank_cutoff(sigma: np.ndarray, m: int, n: int) -> float:
    """Singular-value cutoff below which values are treated as zero."""
    if sigma.size == 0:
        return 0.0
    return float(sigma[0]) * max(m, n) * np.finfo(np.float64).eps


@dataclass(frozen=True)
class TruncatedSvd:
    """Thin SVD factors truncated at the numerical rank.

    `u` is m x rho with orthonormal columns, `sigma` the rho non-increasing
    singular values, `v` is n x rho with orthonormal columns, and
    `k_requested` records the truncation level that was asked for.
    """

    u: np.ndarray
    sigma: np.ndarray
    v: np.ndarray
    k_requested: int

    @property
    def rank(self) -> int:
        return self.sigma.size

    def reconstruct(self) -> np.ndarray:
        return (self.u * self.sigma) @ self.v.T


@dataclass(frozen=True)
class LeverageScores:
    """Statistical leverage scores relative to the best rank-k approximation."""

    scores: np.ndarray
    k: int


class MatrixNorms(NamedTuple):
    frobenius: float
    spectral: float
    nuclear: float


def _svd(a: np.ndarray):
    u, s, vt = np.linalg.svd(a, full_matrices=False)
    return u, s, vt


def svd_full(a) -> TruncatedSvd:
    """Full SVD of `a`, truncated at the numerical rank.

    Returns factors (u, sigma, v) such that u @ diag(sigma) @ v.T
    reconstructs `a` up to roundoff; singular values at or below the
    rank cutoff are dropped.
    """
    a = as_matrix(a)
    m, n = a.shape
    u, s, vt = _svd(a)
    cut = rank_cutoff(s, m, n)
    rho = int(np.count_nonzero(s > cut))
    return TruncatedSvd(u=u[:, :rho], sigma=s[:rho], v=vt[:rho].T, k_requested=min(m, n))


def best_rank_k(a, k: int) -> np.ndarray:
    """Best rank-k approximation in any unitarily invariant norm."""
    a = as_matrix(a)
    m, n = a.shape
    if not 1 <= k <= min(m, n):
        raise ValueError(f"k must be in [1, {min(m, n)}], got {k}")
    u, s, vt = _svd(a)
    return (u[:, :k] * s[:k]) @ vt[:k]


def pinv(a) -> np.ndarray:
    """Moore-Penrose inverse with the standard rank cutoff."""
    a = as_matrix(a)
    m, n = a.shape
    return np.linalg.pinv(a, rcond=max(m, n) * np.finfo(np.float64).eps)


def _orth_columns(a: np.ndarray) -> np.ndarray:
    """Orthonormal basis for the column space at the numerical rank."""
    m, n = a.shape
    u, s, _ = _svd(a)
    cut = rank_cutoff(s, m, n)
    return u[:, s > cut]


def project_onto_columns(c, a) -> np.ndarray:
    """Project `a` onto the column space of `c`, i.e. C C^+ A."""
    c = as_matrix(c, "c")
    a = as_matrix(a, "a")
    if c.shape[0] != a.shape[0]:
        raise ValueError(f"row counts differ: c has {c.shape[0]}, a has {a.shape[0]}")
    q = _orth_columns(c)
    return q @ (q.T @ a)


def project_onto_rows(a, r) -> np.ndarray:
    """Project `a` onto the row space of `r`, i.e. A R^+ R."""
    a = as_matrix(a, "a")
    r = as_matrix(r, "r")
    if r.shape[1] != a.shape[1]:
        raise ValueError(f"column counts differ: r has {r.shape[1]}, a has {a.shape[1]}")
    q = _orth_columns(r.T)
    return (a @ q) @ q.T


def leverage_scores(a, k: int, axis: str = "columns") -> LeverageScores:
    """Leverage scores of the columns (or rows) of `a` at target rank k.

    Column scores are the squared row norms of the top-k right singular
    vector matrix; row scores use the left singular vectors. The scores
    sum to k whenever rank(a) >= k.

    Parameters
    ----------
    a : array_like
        Input matrix.
    k : int
        Target rank; must not exceed the numerical rank of `a`.
    axis : {"columns", "rows"}
        Which index set the scores refer to.
    """
    if axis not in ("columns", "rows"):
        raise ValueError(f"axis must be 'columns' or 'rows', got {axis!r}")
    f = svd_full(a)
    if not 1 <= k <= f.rank:
        raise ValueError(
            f"k={k} exceeds the numerical rank {f.rank} of the input"
        )
    basis = f.v if axis == "columns" else f.u
    scores = np.einsum("ij,ij->i", basis[:, :k], basis[:, :k])
    return LeverageScores(scores=scores, k=k)


def norms(a) -> MatrixNorms:
    """Frobenius, spectral, and nuclear norms from a single SVD."""
    a = as_matrix(a)
    s = np.linalg.svd(a, compute_uv=False)
    return MatrixNorms(
        frobenius=float(np.sqrt(np.sum(s * s))),
        spectral=float(s[0]),
        nuclear=float(np.sum(s)),
    )
