"""Deterministic dual-set spectral-Frobenius sparsification.

Given n vectors x_i (columns of X) and an identity decomposition
sum_i v_i v_i^T = I_k, computes nonnegative weights s with at most r
nonzeros such that the k-th eigenvalue of sum_i s_i v_i v_i^T is at
least (1 - sqrt(k/r))^2 while the weighted trace of the x-side stays
below ||X||_F^2.
"""

from __future__ import annotations

import numpy as np

__all__ = ["SparsificationError", "dual_set_sparsify"]

# relative slack absorbing roundoff in the feasibility comparison
_FEAS_SLACK = 1e-12


class SparsificationError(RuntimeError):
    """No feasible index exists; theory guarantees one, so this signals a numerical bug."""


def dual_set_sparsify(x_columns, v_rows, r: int) -> np.ndarray:
    """Run the deterministic barrier sweep and return the weight vector.

    Parameters
    ----------
    x_columns : array_like, shape (l, n)
        The vectors x_i as columns. Only their squared norms enter the
        algorithm, so l is unconstrained.
    v_rows : array_like, shape (n, k)
        The vectors v_i as rows; must satisfy v_rows.T @ v_rows = I_k.
    r : int
        Target number of nonzero weights, with k < r < n.

    Returns
    -------
    numpy.ndarray, shape (n,)
        Nonnegative weights, at most r of them nonzero, already rescaled
        by (1 - sqrt(k/r)) / r.
    """
    x = np.asarray(x_columns, dtype=np.float64)
    v = np.asarray(v_rows, dtype=np.float64)
    if x.ndim != 2 or v.ndim != 2:
        raise ValueError("x_columns and v_rows must be 2-D arrays")
    n = v.shape[0]
    k = v.shape[1]
    if x.shape[1] != n:
        raise ValueError(f"x_columns has {x.shape[1]} columns but v_rows has {n} rows")
    if not k < r < n:
        raise ValueError(f"need k < r < n, got k={k}, r={r}, n={n}")
    gram = v.T @ v
    if np.linalg.norm(gram - np.eye(k)) > 1e-8:
        raise ValueError("v_rows is not a decomposition of the identity (v^T v != I_k)")

    col_sq = np.einsum("ij,ij->j", x, x)
    ratio = np.sqrt(k / r)
    delta_u = col_sq.sum() / (1.0 - ratio)

    s = np.zeros(n)
    a_mat = np.zeros((k, k))
    sqrt_rk = np.sqrt(r * k)
    for tau in range(r):
        lam, w = np.linalg.eigh(a_mat)
        lower_barrier = tau - sqrt_rk
        shifted = lower_barrier + 1.0
        phi_gap = np.sum(1.0 / (lam - shifted)) - np.sum(1.0 / (lam - lower_barrier))
        proj_sq = (v @ w) ** 2
        inv1 = 1.0 / (lam - shifted)
        upper = proj_sq @ (inv1 * inv1) / phi_gap - proj_sq @ inv1
        lower = col_sq / delta_u if delta_u > 0.0 else np.zeros(n)
        feasible = (upper > 0.0) & (lower <= upper * (1.0 + _FEAS_SLACK))
        hits = np.flatnonzero(feasible)
        if hits.size == 0:
            raise SparsificationError(
                f"no index satisfies the two-sided weight inequality at step {tau}"
            )
        j = int(hits[0])
        # midpoint of the feasible interval for 1/t gives numerical slack
        weight = 2.0 / (lower[j] + upper[j])
        s[j] += weight
        a_mat += weight * np.outer(v[j], v[j])

    return (1.0 - ratio) / r * s
