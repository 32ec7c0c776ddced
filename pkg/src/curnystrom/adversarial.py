"""Adversarial SPSD matrices and their closed-form residual norms.

Two families: the unit-diagonal matrix with constant off-diagonal alpha,
and its block-diagonal stacking. For these every norm of the matrix, of
the rank-k residual, and of the standard/ensemble Nystrom residuals has
an exact closed form, which makes them exact oracles for the samplers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "AdversarialSpec",
    "build",
    "intersection_eta",
    "closed_form_norms",
    "standard_lower_bounds",
    "ensemble_lower_bounds",
]


@dataclass(frozen=True)
class AdversarialSpec:
    """Parameters of the adversarial construction.

    family "single" is the m x m matrix with unit diagonal and constant
    off-diagonal alpha; family "blockdiag" stacks k such blocks of size
    m/k along the diagonal (k must divide m).
    """

    family: str
    m: int
    alpha: float
    k: int | None = None

    def __post_init__(self):
        if self.family not in ("single", "blockdiag"):
            raise ValueError(f"family must be 'single' or 'blockdiag', got {self.family!r}")
        if self.m < 2:
            raise ValueError(f"m must be >= 2, got {self.m}")
        if not 0.0 <= self.alpha < 1.0:
            raise ValueError(f"alpha must lie in [0, 1), got {self.alpha}")
        if self.family == "blockdiag":
            if self.k is None or self.k < 1:
                raise ValueError("blockdiag family requires a positive block count k")
            if self.m % self.k != 0:
                raise ValueError(f"block count {self.k} must divide m={self.m}")

    @property
    def block_size(self) -> int:
        return self.m // self.k if self.family == "blockdiag" else self.m


def build(spec: AdversarialSpec) -> np.ndarray:
    """Materialize the adversarial matrix entrywise."""
    if spec.family == "single":
        return _single(spec.m, spec.alpha)
    p = spec.block_size
    block = _single(p, spec.alpha)
    out = np.zeros((spec.m, spec.m))
    for i in range(spec.k):
        out[i * p:(i + 1) * p, i * p:(i + 1) * p] = block
    return out


def _single(m: int, alpha: float) -> np.ndarray:
    return (1.0 - alpha) * np.eye(m) + alpha * np.ones((m, m))


def intersection_eta(c: int, alpha: float) -> float:
    """Constant value of the off-block product B21 W^+ B21^T: c a^2/(1-a+ca)."""
    return c * alpha**2 / (1.0 - alpha + c * alpha)


def closed_form_norms(spec: AdversarialSpec, k: int) -> dict:
    """Exact norms of the matrix and of its rank-k residual.

    For the single family: Frobenius, spectral, and nuclear norms of the
    matrix and of the residual (six formulas). For the block-diagonal
    family: the leading and trailing singular values plus Frobenius and
    nuclear residual norms (four formulas); there k must equal the block
    count, which doubles as the rank of the dominant part.
    """
    m, alpha = spec.m, spec.alpha
    if not 1 <= k < m:
        raise ValueError(f"k must be in [1, {m - 1}], got {k}")
    if spec.family == "single":
        return {
            "frobenius": math.sqrt(m**2 * alpha**2 + m * (1.0 - alpha**2)),
            "spectral": 1.0 + m * alpha - alpha,
            "nuclear": float(m),
            "residual_frobenius": math.sqrt(m - k) * (1.0 - alpha),
            "residual_spectral": 1.0 - alpha,
            "residual_nuclear": (m - k) * (1.0 - alpha),
        }
    if k != spec.k:
        raise ValueError(
            f"for the blockdiag family the residual rank equals the block count "
            f"{spec.k}, got k={k}"
        )
    p = spec.block_size
    return {
        "sigma_top": 1.0 + p * alpha - alpha,
        "sigma_tail": 1.0 - alpha,
        "residual_frobenius": (1.0 - alpha) * math.sqrt(m - k),
        "residual_nuclear": (1.0 - alpha) * (m - k),
    }


def standard_lower_bounds(spec: AdversarialSpec, c: int, k: int) -> dict:
    """Lower bounds on the standard-Nystrom residual with c columns.

    Absolute bounds depend on the family: for "single" the Frobenius,
    spectral, and nuclear bounds are exact for any c distinct columns; for
    "blockdiag" the Frobenius and nuclear bounds (with k = block count)
    hold with equality for balanced per-block selections. The alpha-free
    ratio bounds (residual over rank-k residual, in the alpha -> 1 limit)
    are always included.
    """
    m, alpha = spec.m, spec.alpha
    if not 1 <= c < m:
        raise ValueError(f"c must be in [1, {m - 1}], got {c}")
    if not 1 <= k < m:
        raise ValueError(f"k must be in [1, {m - 1}], got {k}")
    out = {
        "ratio_frobenius": math.sqrt(1.0 + (m**2 * k - c**3) / (c**2 * (m - k))),
        "ratio_spectral": m / c,
        "ratio_nuclear": (m - c) / (m - k) * (1.0 + k / c),
    }
    beta = (1.0 - alpha) / alpha if alpha > 0.0 else math.inf
    if spec.family == "single":
        if alpha == 0.0:
            # identity matrix: any c columns reproduce themselves exactly
            out.update(
                frobenius=math.sqrt(m - c),
                spectral=1.0,
                nuclear=float(m - c),
            )
            return out
        out.update(
            frobenius=(1.0 - alpha)
            * math.sqrt((m - c) * (1.0 + (m + c + 2.0 / alpha - 2.0) / (c + beta) ** 2)),
            spectral=(1.0 - alpha) * (m + beta) / (c + beta),
            nuclear=(m - c) * (1.0 - alpha) * (1.0 + c * alpha) / (1.0 + c * alpha - alpha),
        )
        return out
    kb = spec.k
    if alpha == 0.0:
        out.update(frobenius=math.sqrt(m - c), nuclear=float(m - c))
        return out
    out.update(
        frobenius=(1.0 - alpha)
        * math.sqrt(m - c - kb + kb * (m + beta * kb) ** 2 / (c + beta * kb) ** 2),
        nuclear=(1.0 - alpha) * (m - c) * (1.0 + kb / (c + beta * kb)),
    )
    return out


def ensemble_lower_bounds(spec: AdversarialSpec, c: int, k: int, t: int) -> dict:
    """Lower bounds on the uniform-weight ensemble residual.

    Assumes t non-overlapping samples of c columns each (t*c <= m). The
    nuclear-norm bound for the single family is attained exactly by every
    such selection. The ensemble spectral-norm lower bound is unknown and
    deliberately absent.
    """
    m, alpha = spec.m, spec.alpha
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    if t * c > m:
        raise ValueError(
            f"non-overlapping sampling impossible: t*c = {t * c} exceeds m = {m}"
        )
    if not 1 <= k < m:
        raise ValueError(f"k must be in [1, {m - 1}], got {k}")
    eff = m - 2.0 * c + c / t
    out = {
        "ratio_frobenius": math.sqrt((eff - k) / (m - k) * (1.0 + k * eff / c**2)),
        "ratio_nuclear": (m - c) / (m - k) * (1.0 + k / c),
    }
    beta = (1.0 - alpha) / alpha if alpha > 0.0 else math.inf
    if spec.family == "single":
        if alpha == 0.0:
            out.update(frobenius=math.sqrt(max(eff, 0.0)), nuclear=float(m - c))
            return out
        out.update(
            frobenius=(1.0 - alpha)
            * math.sqrt(eff * (1.0 + (m + c / t + 2.0 / alpha - 2.0) / (c + beta) ** 2)),
            nuclear=(1.0 - alpha) * (m - c) * (c + 1.0 / alpha) / (c + beta),
        )
        return out
    kb = spec.k
    if alpha == 0.0:
        out.update(frobenius=math.sqrt(max(eff - kb, 0.0)), nuclear=float(m - c))
        return out
    out.update(
        frobenius=(1.0 - alpha)
        * math.sqrt((eff - kb) + kb * ((m - c + c / t + kb * beta) / (c + kb * beta)) ** 2),
        nuclear=(1.0 - alpha) * (m - c) * (c + kb / alpha) / (c + beta * kb),
    )
    return out
