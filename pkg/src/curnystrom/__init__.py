"""Adaptive-sampling CUR decomposition and Nystrom approximation toolkit.

Library layers: dense linear-algebra primitives (`matcore`), probability
construction and seeded samplers (`sampling`), deterministic dual-set
sparsification (`dualset`), near-optimal column selection (`colselect`),
CUR and Nystrom algorithms (`cur`, `nystrom`), closed-form adversarial
oracles (`adversarial`), and the benchmark harness (`benchcli`).
"""

from .adversarial import (
    AdversarialSpec,
    build as build_adversarial,
    closed_form_norms,
    ensemble_lower_bounds,
    intersection_eta,
    standard_lower_bounds,
)
from .benchcli import ExperimentConfig, ResultRecord, build_rbf_kernel, emit, ingest, run_experiment
from .colselect import ApproxSvd, ColSelectParams, near_optimal_select, randomized_svd
from .cur import CurDecomposition, adaptive_cur, error_ratio, subspace_cur
from .dualset import SparsificationError, dual_set_sparsify
from .matcore import (
    LeverageScores,
    MatrixNorms,
    TruncatedSvd,
    best_rank_k,
    leverage_scores,
    norms,
    pinv,
    project_onto_columns,
    project_onto_rows,
    svd_full,
)
from .nystrom import (
    NystromApproximation,
    adaptive_column_selection,
    adaptive_modified_nystrom,
    boosted_run,
    disjoint_uniform_selections,
    ensemble_nystrom,
    modified_nystrom,
    standard_nystrom,
    subspace_nystrom,
    symmetrize,
)
from .sampling import (
    SamplingDistribution,
    Selection,
    build_scaled_selection,
    residual_distribution,
    sample_iid,
    sample_without_replacement,
    subspace_distribution,
    uniform_distribution,
)

__version__ = "0.1.0"

__all__ = [
    "AdversarialSpec",
    "ApproxSvd",
    "ColSelectParams",
    "CurDecomposition",
    "ExperimentConfig",
    "LeverageScores",
    "MatrixNorms",
    "NystromApproximation",
    "ResultRecord",
    "SamplingDistribution",
    "Selection",
    "SparsificationError",
    "TruncatedSvd",
    "adaptive_column_selection",
    "adaptive_cur",
    "adaptive_modified_nystrom",
    "best_rank_k",
    "boosted_run",
    "build_adversarial",
    "build_rbf_kernel",
    "build_scaled_selection",
    "closed_form_norms",
    "disjoint_uniform_selections",
    "dual_set_sparsify",
    "emit",
    "ensemble_lower_bounds",
    "ensemble_nystrom",
    "error_ratio",
    "ingest",
    "intersection_eta",
    "leverage_scores",
    "modified_nystrom",
    "near_optimal_select",
    "norms",
    "pinv",
    "project_onto_columns",
    "project_onto_rows",
    "randomized_svd",
    "residual_distribution",
    "run_experiment",
    "sample_iid",
    "sample_without_replacement",
    "standard_lower_bounds",
    "standard_nystrom",
    "subspace_cur",
    "subspace_distribution",
    "subspace_nystrom",
    "svd_full",
    "symmetrize",
    "uniform_distribution",
]
