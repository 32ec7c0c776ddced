"""CUR decomposition: adaptive-sampling algorithm and the leverage-score
(subspace sampling) baseline, plus error-ratio evaluation."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .colselect import ColSelectParams, near_optimal_select
from .matcore import as_matrix, best_rank_k, pinv, svd_full
from .sampling import (
    Selection,
    residual_distribution,
    sample_iid,
    sample_without_replacement,
    subspace_distribution,
)

__all__ = ["CurDecomposition", "adaptive_cur", "subspace_cur", "error_ratio"]


@dataclass(frozen=True)
class CurDecomposition:
    """A ~ C U R with actual columns in C and actual rows in R.

    For the adaptive method C and R hold unscaled columns/rows of A and
    U = C^+ A R^+. The subspace baseline carries importance-scaled
    columns/rows and U is the pseudoinverse of the scaled intersection W.
    """

    col_indices: np.ndarray
    row_indices: np.ndarray
    c: np.ndarray
    r: np.ndarray
    u: np.ndarray
    method: str

    def reconstruct(self) -> np.ndarray:
        return self.c @ (self.u @ self.r)


def adaptive_cur(a, k: int, epsilon: float | None = None, *, n_columns: int | None = None,
                 n_rows: int | None = None, slack: float = 0.25, rng_seed=0) -> CurDecomposition:
    """Two-sided adaptive-sampling CUR.

    Columns are picked by the near-optimal selection; the same routine on
    the transpose picks a first batch of rows equal in count to the
    columns, and the remaining rows are drawn i.i.d. from the row residual
    of that first batch. The intersection matrix is U = C^+ A R^+.

    Parameters
    ----------
    a : array_like
        Input matrix, m x n.
    k : int
        Target rank, >= 2.
    epsilon : float, optional
        Error parameter in (0, 1]. Derives c = ceil(2k/eps) plus slack
        dual-set columns, r1 = c, r2 = ceil(c/eps).
    n_columns, n_rows : int, optional
        Explicit budget alternative to `epsilon` (used by the benchmark
        sweep c = a*k, r = a*c): r1 = n_columns near-optimal rows and
        r2 = n_rows - n_columns adaptive rows. Exactly one of `epsilon`
        and the count pair may be supplied.
    slack : float
        The o(1) knob forwarded to the column-selection budget split.
    rng_seed : int or numpy Generator
        Drives all three sampling stages.
    """
    a = as_matrix(a)
    m, n = a.shape
    if (epsilon is None) == (n_columns is None):
        raise ValueError("supply exactly one of epsilon or (n_columns, n_rows)")
    if epsilon is not None:
        params = ColSelectParams.from_epsilon(k, epsilon, slack)
        c = params.total_columns
        r2 = math.ceil(c / epsilon)
    else:
        if n_rows is None:
            raise ValueError("n_rows is required when n_columns is given")
        c = n_columns
        r2 = n_rows - c
        if r2 < 1:
            raise ValueError(f"n_rows={n_rows} leaves no adaptive rows beyond r1={c}")
        params = ColSelectParams.from_total_columns(k, c, slack)
    if c >= n or c >= m:
        raise ValueError(
            f"need {c} columns and {c} first-stage rows; matrix must be larger "
            f"than {c}x{c}, got {m}x{n}"
        )

    rng = np.random.default_rng(rng_seed)
    c_mat, col_sel = near_optimal_select(a, params, rng)
    _, row_sel1 = near_optimal_select(a.T, params, rng)
    r1_mat = a[row_sel1.indices, :]

    dist = residual_distribution(a, r1_mat, axis="rows")
    row_sel2 = sample_iid(dist, r2, rng)

    row_indices = np.concatenate([row_sel1.indices, row_sel2.indices])
    r_mat = a[row_indices, :]
    u = pinv(c_mat) @ a @ pinv(r_mat)
    return CurDecomposition(
        col_indices=col_sel.indices,
        row_indices=row_indices,
        c=c_mat,
        r=r_mat,
        u=u,
        method="adaptive",
    )


def subspace_cur(a, k: int, c: int, r: int, rng_seed=0) -> CurDecomposition:
    """Leverage-score CUR baseline.

    Columns are drawn without replacement with probabilities proportional
    to the column leverage scores of A at rank k; rows are then drawn from
    the row leverage scores of the scaled column block C. Rows of A and C
    are sampled simultaneously (same indices, same 1/sqrt(r q_i) scaling)
    to form R and W, and U = W^+.
    """
    a = as_matrix(a)
    m, n = a.shape
    if c > n or r > m:
        raise ValueError(f"need c <= {n} and r <= {m}, got c={c}, r={r}")
    rng = np.random.default_rng(rng_seed)

    col_dist = subspace_distribution(a, k, axis="columns")
    col_sel = sample_without_replacement(col_dist, c, rng)
    col_scale = 1.0 / np.sqrt(c * col_dist.probs[col_sel.indices])
    c_mat = a[:, col_sel.indices] * col_scale

    # rank for the second-stage leverage capped at the achieved rank of C
    rank_c = svd_full(c_mat).rank
    row_dist = subspace_distribution(c_mat, min(c, rank_c), axis="rows")
    row_sel = sample_without_replacement(row_dist, r, rng)
    row_scale = 1.0 / np.sqrt(r * row_dist.probs[row_sel.indices])
    r_mat = a[row_sel.indices, :] * row_scale[:, None]
    w = c_mat[row_sel.indices, :] * row_scale[:, None]

    return CurDecomposition(
        col_indices=col_sel.indices,
        row_indices=row_sel.indices,
        c=c_mat,
        r=r_mat,
        u=pinv(w),
        method="subspace",
    )


def error_ratio(a, approx, k: int) -> float:
    """||A - approx||_F / ||A - A_k||_F, the headline benchmark metric."""
    a = as_matrix(a, "a")
    approx = as_matrix(approx, "approx")
    if a.shape != approx.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {approx.shape}")
    denom = np.linalg.norm(a - best_rank_k(a, k))
    floor = np.linalg.norm(a) * max(a.shape) * np.finfo(np.float64).eps
    if denom <= floor:
        raise ValueError(f"||A - A_k||_F vanishes at k={k}; the ratio is undefined")
    return float(np.linalg.norm(a - approx) / denom)
