"""Probability construction and index sampling.

Residual-norm adaptive distributions, leverage-score (subspace)
distributions, and uniform sampling, with and without replacement.
Every sampler takes an explicit seed (or numpy Generator); there is no
hidden global random state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matcore import as_matrix, leverage_scores, project_onto_columns, project_onto_rows

__all__ = [
    "SamplingDistribution",
    "Selection",
    "uniform_distribution",
    "residual_distribution",
    "subspace_distribution",
    "sample_iid",
    "sample_without_replacement",
    "build_scaled_selection",
]

# probabilities below this are clamped to zero to avoid denormal pathologies
_PROB_FLOOR = 1e-300


@dataclass(frozen=True)
class SamplingDistribution:
    """Probability vector over row or column indices.

    `provenance` records how the probabilities were built:
    "residual", "leverage", or "uniform".
    """

    probs: np.ndarray
    provenance: str

    def __post_init__(self):
        probs = np.asarray(self.probs, dtype=np.float64)
        if (probs < 0.0).any():
            raise ValueError("probabilities must be nonnegative")
        if abs(probs.sum() - 1.0) > 1e-12:
            raise ValueError(f"probabilities sum to {probs.sum()!r}, not 1")
        object.__setattr__(self, "probs", probs)

    @property
    def size(self) -> int:
        return self.probs.size


@dataclass(frozen=True)
class Selection:
    """Ordered list of sampled indices, with optional importance scaling.

    Duplicates are permitted for with-replacement draws. When present,
    `scaling` holds the per-draw factors 1/sqrt(count * p_i).
    """

    indices: np.ndarray
    scaling: np.ndarray | None = None

    def __post_init__(self):
        if self.scaling is not None and not (np.asarray(self.scaling) > 0.0).all():
            raise ValueError("scaling factors must be strictly positive")

    def __len__(self) -> int:
        return self.indices.size


def _make_distribution(weights: np.ndarray, provenance: str) -> SamplingDistribution:
    w = np.where(weights < _PROB_FLOOR, 0.0, weights)
    total = w.sum()
    if total <= 0.0:
        raise ValueError("all probability weights vanished")
    return SamplingDistribution(probs=w / total, provenance=provenance)


def uniform_distribution(n: int) -> SamplingDistribution:
    """Uniform distribution over n indices."""
    if n < 1:
        raise ValueError(f"need at least one index, got n={n}")
    return SamplingDistribution(probs=np.full(n, 1.0 / n), provenance="uniform")


def residual_distribution(a, basis, axis: str = "columns") -> SamplingDistribution:
    """Adaptive sampling probabilities from a projection residual.

    For axis="columns" the residual is B = A - (basis)(basis)^+ A and
    p_i = ||b_i||^2 / ||B||_F^2 over columns; for axis="rows" the residual
    is B = A - A (basis)^+ (basis) with probabilities over rows.

    When the basis already spans `a` (zero residual up to roundoff) the
    uniform distribution is returned, still tagged "residual": any draw is
    then error-free because the projection is already exact.
    """
    a = as_matrix(a, "a")
    if axis == "columns":
        b = a - project_onto_columns(basis, a)
        sq = np.einsum("ij,ij->j", b, b)
    elif axis == "rows":
        b = a - project_onto_rows(a, basis)
        sq = np.einsum("ij,ij->i", b, b)
    else:
        raise ValueError(f"axis must be 'columns' or 'rows', got {axis!r}")
    total = sq.sum()
    # projection residual of a spanning basis is roundoff, not exactly zero
    floor = (np.linalg.norm(a) * max(a.shape) * np.finfo(np.float64).eps) ** 2
    if total <= floor:
        n = sq.size
        return SamplingDistribution(probs=np.full(n, 1.0 / n), provenance="residual")
    return _make_distribution(sq, "residual")


def subspace_distribution(a, k: int, axis: str = "columns") -> SamplingDistribution:
    """Leverage-score probabilities p_j = l_j / k at target rank k."""
    lev = leverage_scores(a, k, axis=axis)
    return _make_distribution(lev.scores, "leverage")


def _draw(rng: np.random.Generator, cdf: np.ndarray, count: int) -> np.ndarray:
    u = rng.random(count)
    return np.searchsorted(cdf, u, side="right").astype(np.int64)


def sample_iid(dist: SamplingDistribution, count: int, rng_seed) -> Selection:
    """Draw `count` indices i.i.d. from `dist`; deterministic given the seed."""
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    rng = np.random.default_rng(rng_seed)
    cdf = np.cumsum(dist.probs)
    cdf[-1] = 1.0
    return Selection(indices=_draw(rng, cdf, count))


def sample_without_replacement(dist: SamplingDistribution, count: int, rng_seed) -> Selection:
    """Draw `count` distinct indices by sequential renormalized draws."""
    support = int(np.count_nonzero(dist.probs))
    if count > support:
        raise ValueError(
            f"cannot draw {count} distinct indices from a support of size {support}"
        )
    rng = np.random.default_rng(rng_seed)
    probs = dist.probs.copy()
    chosen = np.empty(count, dtype=np.int64)
    for i in range(count):
        cdf = np.cumsum(probs)
        total = cdf[-1]
        idx = int(np.searchsorted(cdf, rng.random() * total, side="right"))
        # guard against landing past the end on roundoff
        idx = min(idx, probs.size - 1)
        while probs[idx] == 0.0:
            idx -= 1
        chosen[i] = idx
        probs[idx] = 0.0
    return Selection(indices=chosen)


def build_scaled_selection(a, dist: SamplingDistribution, count: int, rng_seed):
    """Sample columns of a symmetric `a` with importance scaling.

    Returns (c, w, sel) where c = A S D, w = (S D)^T A (S D), and the
    diagonal scaling is d_jj = 1/sqrt(count * p_i) for the i-th column
    drawn in trial j.
    """
    a = as_matrix(a, "a")
    sel0 = sample_iid(dist, count, rng_seed)
    idx = sel0.indices
    scale = 1.0 / np.sqrt(count * dist.probs[idx])
    c = a[:, idx] * scale
    w = (a[np.ix_(idx, idx)] * scale) * scale[:, None]
    return c, w, Selection(indices=idx, scaling=scale)
