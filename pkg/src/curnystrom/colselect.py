"""Near-optimal relative-error column selection.

Three stages: randomized approximate SVD, dual-set sparsification of the
residual against the approximate right singular vectors, then adaptive
residual sampling of the remaining budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dualset import dual_set_sparsify
from .matcore import as_matrix
from .sampling import Selection, residual_distribution, sample_iid

__all__ = ["ApproxSvd", "ColSelectParams", "randomized_svd", "near_optimal_select"]


@dataclass(frozen=True)
class ApproxSvd:
    """Rank-k factors from random projection; v has orthonormal columns."""

    u: np.ndarray
    sigma: np.ndarray
    v: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.u * self.sigma) @ self.v.T


@dataclass(frozen=True)
class ColSelectParams:
    """Column budget split for the near-optimal selection.

    `dual_budget` columns are picked by the deterministic dual-set sweep
    (which needs strictly more than k candidates to be well posed) and
    `adaptive_count` further columns are drawn i.i.d. from the residual.
    """

    k: int
    dual_budget: int
    adaptive_count: int

    def __post_init__(self):
        if self.k < 2:
            raise ValueError(f"target rank k must be >= 2, got {self.k}")
        if self.dual_budget <= self.k:
            raise ValueError(
                f"dual_budget must exceed k, got {self.dual_budget} with k={self.k}"
            )
        if self.adaptive_count < 1:
            raise ValueError(f"adaptive_count must be >= 1, got {self.adaptive_count}")

    @property
    def total_columns(self) -> int:
        return self.dual_budget + self.adaptive_count

    @classmethod
    def from_epsilon(cls, k: int, epsilon: float, slack: float = 0.25) -> "ColSelectParams":
        """Budget 2k/eps adaptive draws plus a slack-sized dual-set stage.

        `slack` is the explicit o(1) knob: the dual-set stage receives
        slack * ceil(2k/eps) columns, floored at k+1 so the sweep stays
        well posed.
        """
        if not 0.0 < epsilon <= 1.0:
            raise ValueError(f"epsilon must be in (0, 1], got {epsilon}")
        adaptive = math.ceil(2 * k / epsilon)
        dual = max(k + 1, math.ceil(slack * adaptive))
        return cls(k=k, dual_budget=dual, adaptive_count=adaptive)

    @classmethod
    def from_total_columns(cls, k: int, total: int, slack: float = 0.25) -> "ColSelectParams":
        """Split an explicit total column budget between the two stages."""
        dual = max(k + 1, math.ceil(total * slack / (1.0 + slack)))
        adaptive = total - dual
        if adaptive < 1:
            raise ValueError(
                f"column budget {total} too small for k={k}; need at least {k + 2}"
            )
        return cls(k=k, dual_budget=dual, adaptive_count=adaptive)


def randomized_svd(a, k: int, oversample: int = 10, power_iters: int = 2, rng_seed=0) -> ApproxSvd:
    """Approximate rank-k SVD via a Gaussian range finder with power iterations."""
    a = as_matrix(a)
    m, n = a.shape
    if not 1 <= k <= min(m, n):
        raise ValueError(f"k must be in [1, {min(m, n)}], got {k}")
    rng = np.random.default_rng(rng_seed)
    p = min(max(oversample, 0), min(m, n) - k)
    omega = rng.standard_normal((n, k + p))
    q, _ = np.linalg.qr(a @ omega)
    for _ in range(power_iters):
        z, _ = np.linalg.qr(a.T @ q)
        q, _ = np.linalg.qr(a @ z)
    b = q.T @ a
    ub, s, vt = np.linalg.svd(b, full_matrices=False)
    return ApproxSvd(u=q @ ub[:, :k], sigma=s[:k], v=vt[:k].T)


def near_optimal_select(a, params: ColSelectParams, rng_seed=0):
    """Select params.total_columns columns of `a` targeting rank params.k.

    Stage one computes an approximate rank-k SVD, stage two reweights the
    residual columns with the dual-set sweep and keeps the nonzero-weight
    columns, stage three samples the adaptive budget i.i.d. from the
    residual of the kept columns. Duplicate adaptive draws are kept: they
    do not change the span and the pseudoinverse absorbs rank deficiency.

    Returns
    -------
    (c_matrix, selection)
        The selected columns of `a` (unscaled: reweighting never changes
        the projector) and the Selection listing their indices, dual-set
        picks first.
    """
    a = as_matrix(a)
    n = a.shape[1]
    if params.total_columns >= n:
        raise ValueError(
            f"requested {params.total_columns} columns from a matrix with only "
            f"{n}; sampling every column is vacuous"
        )
    rng = np.random.default_rng(rng_seed)

    approx = randomized_svd(a, params.k, rng_seed=rng)
    residual = a - approx.reconstruct()
    weights = dual_set_sparsify(residual, approx.v, params.dual_budget)
    kept = np.flatnonzero(weights > 0.0)
    c1 = a[:, kept]

    dist = residual_distribution(a, c1, axis="columns")
    extra = sample_iid(dist, params.adaptive_count, rng)

    indices = np.concatenate([kept, extra.indices])
    return a[:, indices], Selection(indices=indices)
