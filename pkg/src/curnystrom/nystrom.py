"""Nystrom approximations of symmetric matrices.

Covers the standard model (intersection W^+ or its rank-restricted form),
the ensemble model (weighted sum of standard approximations), the modified
model (intersection C^+ A (C^+)^T), the adaptive-sampling algorithm for
the modified model, the leverage-score baseline, and Markov boosting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .colselect import ColSelectParams, near_optimal_select
from .matcore import as_matrix, best_rank_k, pinv
from .sampling import (
    Selection,
    build_scaled_selection,
    residual_distribution,
    sample_iid,
    subspace_distribution,
)

__all__ = [
    "NystromApproximation",
    "standard_nystrom",
    "ensemble_nystrom",
    "modified_nystrom",
    "adaptive_column_selection",
    "adaptive_modified_nystrom",
    "subspace_nystrom",
    "boosted_run",
    "disjoint_uniform_selections",
    "symmetrize",
]

_SYM_TOL = 1e-8


def symmetrize(a, tol: float = _SYM_TOL) -> np.ndarray:
    """Return (A + A^T)/2 if A is symmetric within relative tolerance, else raise."""
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got {a.shape}")
    defect = np.linalg.norm(a - a.T)
    if defect > tol * max(np.linalg.norm(a), 1e-300):
        raise ValueError(f"matrix is not symmetric: ||A - A^T||_F = {defect:.3e}")
    return (a + a.T) / 2.0


@dataclass(frozen=True)
class NystromApproximation:
    """Approximation A ~ C U C^T of a symmetric matrix.

    For the ensemble variant `c` concatenates the per-sample column blocks
    and `u` is block diagonal with the weighted intersection matrices, so
    the product form holds for every variant.
    """

    col_indices: np.ndarray
    c: np.ndarray
    u: np.ndarray
    variant: str
    weights: np.ndarray | None = None

    def matrix(self) -> np.ndarray:
        out = self.c @ self.u @ self.c.T
        return (out + out.T) / 2.0


def _selected_blocks(a: np.ndarray, sel: Selection):
    idx = np.asarray(sel.indices)
    c = a[:, idx]
    w = a[np.ix_(idx, idx)]
    if sel.scaling is not None:
        c = c * sel.scaling
        w = (w * sel.scaling) * sel.scaling[:, None]
    return c, w


def standard_nystrom(a, sel: Selection, rank_restrict: int | None = None) -> NystromApproximation:
    """Standard Nystrom approximation C W^+ C^T from the selected columns.

    With `rank_restrict` the intersection uses the pseudoinverse of the
    best rank-k approximation to W instead of W^+ itself.
    """
    a = symmetrize(a)
    c, w = _selected_blocks(a, sel)
    if rank_restrict is None:
        return NystromApproximation(sel.indices, c, pinv(w), "standard")
    if not 1 <= rank_restrict <= w.shape[0]:
        raise ValueError(f"rank_restrict must be in [1, {w.shape[0]}], got {rank_restrict}")
    u = pinv(best_rank_k(w, rank_restrict))
    return NystromApproximation(sel.indices, c, u, "standard_rank_k")


def ensemble_nystrom(a, samples: Sequence[Selection], weights=None) -> NystromApproximation:
    """Ensemble Nystrom: weighted sum of standard approximations.

    All samples must select the same number of columns. Weights default to
    the uniform 1/t and must sum to one.
    """
    a = symmetrize(a)
    if not samples:
        raise ValueError("need at least one sample")
    sizes = {len(s) for s in samples}
    if len(sizes) != 1:
        raise ValueError(f"all samples must have the same size, got sizes {sorted(sizes)}")
    t = len(samples)
    if weights is None:
        weights = np.full(t, 1.0 / t)
    else:
        weights = np.asarray(weights, dtype=np.float64)
        if weights.size != t:
            raise ValueError(f"got {weights.size} weights for {t} samples")
        if abs(weights.sum() - 1.0) > 1e-12:
            raise ValueError("ensemble weights must sum to 1")
    c_size = sizes.pop()
    blocks = []
    c_all = np.empty((a.shape[0], t * c_size))
    u_all = np.zeros((t * c_size, t * c_size))
    for i, sel in enumerate(samples):
        c, w = _selected_blocks(a, sel)
        c_all[:, i * c_size:(i + 1) * c_size] = c
        u_all[i * c_size:(i + 1) * c_size, i * c_size:(i + 1) * c_size] = weights[i] * pinv(w)
        blocks.append(sel.indices)
    return NystromApproximation(
        col_indices=np.concatenate(blocks),
        c=c_all,
        u=u_all,
        variant="ensemble",
        weights=weights,
    )


def modified_nystrom(a, sel: Selection) -> NystromApproximation:
    """Modified Nystrom: intersection C^+ A (C^+)^T instead of W^+."""
    a = symmetrize(a)
    c, _ = _selected_blocks(a, sel)
    pc = pinv(c)
    return NystromApproximation(sel.indices, c, pc @ a @ pc.T, "modified")


def adaptive_column_selection(a, k: int, epsilon: float | None = None, *,
                              total_columns: int | None = None, slack: float = 0.25,
                              rng_seed=0) -> Selection:
    """Two-round column selection for symmetric inputs.

    A first batch of c1 columns comes from the near-optimal selection and
    c2 = ceil(c1/eps) further columns are drawn i.i.d. from the column
    residual of the first batch.

    Either `epsilon` in (0, 1] or an explicit `total_columns` budget must
    be given. The budget form back-solves eps from c = 2k/eps^2 (1+slack)
    and splits the budget as c1 = c*eps/(1+eps), c2 the rest.
    """
    a = symmetrize(a)
    m = a.shape[0]
    if (epsilon is None) == (total_columns is None):
        raise ValueError("supply exactly one of epsilon or total_columns")
    if epsilon is not None:
        params = ColSelectParams.from_epsilon(k, epsilon, slack)
        c1 = params.total_columns
        c2 = math.ceil(c1 / epsilon)
    else:
        eps_eff = min(1.0, math.sqrt(2.0 * k * (1.0 + slack) / total_columns))
        c1 = max(k + 2, round(total_columns * eps_eff / (1.0 + eps_eff)))
        c2 = total_columns - c1
        if c2 < 1:
            raise ValueError(
                f"total_columns={total_columns} too small for k={k}; need at least {k + 3}"
            )
        params = ColSelectParams.from_total_columns(k, c1, slack)
    if c1 + c2 >= m:
        raise ValueError(
            f"derived column count {c1 + c2} reaches the matrix size {m}; "
            f"increase epsilon or shrink k"
        )

    rng = np.random.default_rng(rng_seed)
    c1_mat, sel1 = near_optimal_select(a, params, rng)
    dist = residual_distribution(a, c1_mat, axis="columns")
    sel2 = sample_iid(dist, c2, rng)
    return Selection(indices=np.concatenate([sel1.indices, sel2.indices]))


def adaptive_modified_nystrom(a, k: int, epsilon: float | None = None, *,
                              total_columns: int | None = None, slack: float = 0.25,
                              rng_seed=0) -> NystromApproximation:
    """Adaptive-sampling algorithm for the modified Nystrom model.

    Columns come from `adaptive_column_selection`; the intersection is
    C^+ A (C^+)^T over the combined columns.
    """
    a = symmetrize(a)
    sel = adaptive_column_selection(
        a, k, epsilon, total_columns=total_columns, slack=slack, rng_seed=rng_seed
    )
    return modified_nystrom(a, sel)


def subspace_nystrom(a, k: int, c: int, rng_seed=0) -> NystromApproximation:
    """Leverage-score baseline: scaled i.i.d. columns with intersection W^+."""
    a = symmetrize(a)
    dist = subspace_distribution(a, k, axis="columns")
    c_mat, w, sel = build_scaled_selection(a, dist, c, rng_seed)
    return NystromApproximation(sel.indices, c_mat, pinv(w), "standard")


def disjoint_uniform_selections(m: int, c: int, t: int, rng_seed=0) -> list[Selection]:
    """t non-overlapping uniform samples of c distinct columns each."""
    if t * c > m:
        raise ValueError(f"cannot draw {t} disjoint samples of {c} from {m} columns")
    rng = np.random.default_rng(rng_seed)
    perm = rng.permutation(m)[: t * c]
    return [Selection(indices=np.sort(perm[i * c:(i + 1) * c])) for i in range(t)]


def boosted_run(a, algorithm: Callable[[int], NystromApproximation], t: int, rng_seed: int = 0):
    """Run `algorithm` on t derived seeds and keep the lowest-error result.

    `algorithm` maps a seed to a NystromApproximation of `a`. Returns the
    best approximation (deterministic argmin, first winner on ties) and
    the per-run Frobenius errors in seed order.
    """
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    a = as_matrix(a)
    runs = [algorithm(rng_seed + i) for i in range(t)]
    errors = np.array([np.linalg.norm(a - run.matrix()) for run in runs])
    best = int(np.argmin(errors))
    return runs[best], errors
