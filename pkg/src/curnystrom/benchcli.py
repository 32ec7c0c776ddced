"""Benchmark harness and command-line interface.

Reads matrices (Matrix Market or dense CSV), builds RBF kernels, runs the
error-ratio experiments with seeded repeats, and emits CSV/JSON records.
The headline metric per grid point is the minimum error ratio over the
repeats; the per-repeat values are kept alongside for expectation checks.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from .adversarial import (
    AdversarialSpec,
    build as build_adversarial,
    ensemble_lower_bounds,
    standard_lower_bounds,
)
from .colselect import ColSelectParams
from .cur import CurDecomposition, adaptive_cur, error_ratio, subspace_cur
from .matcore import as_matrix, best_rank_k, pinv
from .nystrom import (
    adaptive_column_selection,
    disjoint_uniform_selections,
    ensemble_nystrom,
    modified_nystrom,
    standard_nystrom,
    symmetrize,
)
from .sampling import (
    Selection,
    build_scaled_selection,
    sample_without_replacement,
    subspace_distribution,
    uniform_distribution,
)

__all__ = [
    "ExperimentConfig",
    "ResultRecord",
    "ingest",
    "build_rbf_kernel",
    "run_experiment",
    "emit",
    "serialize_records",
    "main",
]

CSV_HEADER = "method,variant,k,c,r,error_ratio,seconds,seed"

DEFAULT_MAX_DIM = 2000


class UsageError(ValueError):
    """Bad command-line arguments or configuration."""


# ---------------------------------------------------------------- ingestion


def _fail(path, lineno, message):
    raise ValueError(f"{path}:{lineno}: {message}")


def _read_dense_csv(path: str, max_dim: int) -> np.ndarray:
    rows = []
    width = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split(",")
            try:
                row = [float(p) for p in parts]
            except ValueError:
                _fail(path, lineno, f"cannot parse row {line!r} as floats")
            if width is None:
                width = len(row)
            elif len(row) != width:
                _fail(path, lineno, f"expected {width} fields, got {len(row)}")
            rows.append(row)
            if len(rows) > max_dim or width > max_dim:
                _fail(path, lineno, f"matrix exceeds the dimension cap {max_dim}")
    if not rows:
        raise ValueError(f"{path}: empty matrix file")
    return np.asarray(rows, dtype=np.float64)


def _read_matrix_market(path: str, max_dim: int) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.readlines()
    if not lines:
        raise ValueError(f"{path}: empty file")
    header = lines[0].split()
    if len(header) != 5 or header[0] != "%%MatrixMarket" or header[1].lower() != "matrix":
        _fail(path, 1, "missing '%%MatrixMarket matrix' header")
    layout, fieldtype, symmetry = (w.lower() for w in header[2:5])
    if layout not in ("coordinate", "array"):
        _fail(path, 1, f"unsupported layout {layout!r}")
    if fieldtype not in ("real", "integer"):
        _fail(path, 1, f"unsupported field {fieldtype!r} (real/integer only)")
    if symmetry not in ("general", "symmetric"):
        _fail(path, 1, f"unsupported symmetry {symmetry!r}")

    body = [
        (lineno, line.strip())
        for lineno, line in enumerate(lines[1:], start=2)
        if line.strip() and not line.lstrip().startswith("%")
    ]
    if not body:
        raise ValueError(f"{path}: no size line found")
    lineno, size_line = body[0]
    sizes = size_line.split()
    expected = 3 if layout == "coordinate" else 2
    if len(sizes) != expected:
        _fail(path, lineno, f"size line must have {expected} integers")
    try:
        dims = [int(s) for s in sizes]
    except ValueError:
        _fail(path, lineno, f"cannot parse size line {size_line!r}")
    m, n = dims[0], dims[1]
    if m < 1 or n < 1:
        _fail(path, lineno, f"bad dimensions {m} x {n}")
    if max(m, n) > max_dim:
        _fail(path, lineno, f"matrix {m}x{n} exceeds the dimension cap {max_dim}")
    if symmetry == "symmetric" and m != n:
        _fail(path, lineno, "symmetric matrix must be square")
    out = np.zeros((m, n))

    if layout == "coordinate":
        nnz = dims[2]
        entries = body[1:]
        if len(entries) != nnz:
            raise ValueError(f"{path}: expected {nnz} entries, found {len(entries)}")
        for lineno, line in entries:
            parts = line.split()
            if len(parts) != 3:
                _fail(path, lineno, f"expected 'i j value', got {line!r}")
            try:
                i, j, v = int(parts[0]), int(parts[1]), float(parts[2])
            except ValueError:
                _fail(path, lineno, f"cannot parse entry {line!r}")
            if not (1 <= i <= m and 1 <= j <= n):
                _fail(path, lineno, f"index ({i}, {j}) out of range for {m}x{n}")
            out[i - 1, j - 1] = v
            if symmetry == "symmetric":
                out[j - 1, i - 1] = v
        return out

    values = []
    for lineno, line in body[1:]:
        for tok in line.split():
            try:
                values.append(float(tok))
            except ValueError:
                _fail(path, lineno, f"cannot parse value {tok!r}")
    if symmetry == "general":
        if len(values) != m * n:
            raise ValueError(f"{path}: expected {m * n} values, found {len(values)}")
        # array layout stores values column by column
        return np.asarray(values).reshape((n, m)).T
    want = m * (m + 1) // 2
    if len(values) != want:
        raise ValueError(f"{path}: expected {want} lower-triangle values, found {len(values)}")
    pos = 0
    for j in range(n):
        for i in range(j, m):
            out[i, j] = values[pos]
            out[j, i] = values[pos]
            pos += 1
    return out


def ingest(path: str, format: str | None = None, max_dim: int = DEFAULT_MAX_DIM) -> np.ndarray:
    """Read a dense matrix from a Matrix Market or dense-CSV file.

    Coordinate files are densified; symmetric storage is expanded. Files
    larger than `max_dim` in either dimension are refused.
    """
    if format is None:
        lowered = path.lower()
        if lowered.endswith((".mtx", ".mm")):
            format = "matrix-market"
        elif lowered.endswith(".csv"):
            format = "dense-csv"
        else:
            with open(path, "r", encoding="utf-8") as fh:
                first = fh.readline()
            format = "matrix-market" if first.startswith("%%MatrixMarket") else "dense-csv"
    if format == "matrix-market":
        return as_matrix(_read_matrix_market(path, max_dim))
    if format == "dense-csv":
        return as_matrix(_read_dense_csv(path, max_dim))
    raise ValueError(f"unknown format {format!r}; use 'matrix-market' or 'dense-csv'")


def build_rbf_kernel(points, sigma: float) -> np.ndarray:
    """Gaussian kernel a_ij = exp(-||x_i - x_j||^2 / (2 sigma^2))."""
    points = as_matrix(points, "points")
    if sigma <= 0.0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    sq = np.einsum("ij,ij->i", points, points)
    d2 = sq[:, None] + sq[None, :] - 2.0 * points @ points.T
    np.maximum(d2, 0.0, out=d2)
    kernel = np.exp(-d2 / (2.0 * sigma**2))
    kernel = (kernel + kernel.T) / 2.0
    np.fill_diagonal(kernel, 1.0)
    return kernel


# ---------------------------------------------------------------- experiments


@dataclass(frozen=True)
class ExperimentConfig:
    """One experiment: an input matrix, a task, and a sampling grid.

    Exactly one input source (input_path / points_path+sigma / adversarial)
    and exactly one of (a_values, epsilon) must be given. With the
    multiplier grid, each point uses c = a*k columns and, for CUR,
    r = a*c rows.
    """

    task: str
    k: int
    method: str = "adaptive"
    variant: str = "modified"
    input_path: str | None = None
    input_format: str | None = None
    points_path: str | None = None
    sigma: float | None = None
    adversarial: AdversarialSpec | None = None
    a_values: tuple[float, ...] | None = None
    epsilon: float | None = None
    ensemble_t: int = 1
    repeats: int = 1
    seed: int = 0
    max_dim: int = DEFAULT_MAX_DIM

    def __post_init__(self):
        if self.task not in ("cur", "nystrom", "lowerbound"):
            raise ValueError(f"unknown task {self.task!r}")
        if self.method not in ("adaptive", "subspace", "uniform"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.variant not in ("standard", "standard-k", "ensemble", "modified"):
            raise ValueError(f"unknown variant {self.variant!r}")
        sources = sum(
            x is not None for x in (self.input_path, self.points_path, self.adversarial)
        )
        if sources != 1:
            raise ValueError("supply exactly one input source")
        if self.points_path is not None and self.sigma is None:
            raise ValueError("--points requires --sigma")
        if (self.a_values is None) == (self.epsilon is None):
            raise ValueError("supply exactly one of the a-grid and epsilon")
        if self.epsilon is not None and self.method != "adaptive":
            raise ValueError("epsilon parameterization applies to the adaptive method only")
        if self.repeats < 1:
            raise ValueError(f"repeats must be >= 1, got {self.repeats}")
        if self.k < 2:
            raise ValueError(f"k must be >= 2, got {self.k}")
        if self.ensemble_t < 1:
            raise ValueError(f"ensemble_t must be >= 1, got {self.ensemble_t}")


@dataclass
class ResultRecord:
    """One grid point of an experiment.

    `error_ratio` is the minimum of `per_repeat`; `seconds` sums the
    per-repeat wall-clock times. Lower-bound records also carry the
    closed-form `bound` and the minimum `measured` value. Skipped grid
    points keep the reason in `skipped` and appear only in JSON output.
    """

    method: str
    variant: str
    k: int
    c: int
    r: int
    error_ratio: float
    seconds: float
    seed: int
    per_repeat: list = field(default_factory=list)
    bound: float | None = None
    measured: float | None = None
    skipped: str | None = None


def load_input(config: ExperimentConfig) -> np.ndarray:
    if config.input_path is not None:
        return ingest(config.input_path, config.input_format, config.max_dim)
    if config.points_path is not None:
        pts = ingest(config.points_path, "dense-csv", config.max_dim)
        return build_rbf_kernel(pts, config.sigma)
    return build_adversarial(config.adversarial)


def _uniform_cur(a, c, r, rng_seed) -> CurDecomposition:
    rng = np.random.default_rng(rng_seed)
    m, n = a.shape
    col_sel = sample_without_replacement(uniform_distribution(n), c, rng)
    row_sel = sample_without_replacement(uniform_distribution(m), r, rng)
    c_mat = a[:, col_sel.indices]
    r_mat = a[row_sel.indices, :]
    u = pinv(c_mat) @ a @ pinv(r_mat)
    return CurDecomposition(col_sel.indices, row_sel.indices, c_mat, r_mat, u, "uniform")


def _cur_point(a, config, c, r, seed) -> np.ndarray:
    if config.method == "adaptive":
        if config.epsilon is not None:
            dec = adaptive_cur(a, config.k, config.epsilon, rng_seed=seed)
        else:
            dec = adaptive_cur(a, config.k, n_columns=c, n_rows=r, rng_seed=seed)
    elif config.method == "subspace":
        dec = subspace_cur(a, config.k, c, r, rng_seed=seed)
    else:
        dec = _uniform_cur(a, c, r, rng_seed=seed)
    return dec.reconstruct()


def _nystrom_selection(a, config, c, seed) -> Selection:
    m = a.shape[0]
    if config.method == "adaptive":
        if config.epsilon is not None:
            return adaptive_column_selection(a, config.k, config.epsilon, rng_seed=seed)
        return adaptive_column_selection(a, config.k, total_columns=c, rng_seed=seed)
    if config.method == "subspace":
        dist = subspace_distribution(a, config.k, axis="columns")
        _, _, sel = build_scaled_selection(a, dist, c, seed)
        return sel
    return sample_without_replacement(uniform_distribution(m), c, seed)


def _nystrom_point(a, config, c, seed) -> np.ndarray:
    if config.variant == "ensemble":
        seeds = [seed + 7919 * i for i in range(config.ensemble_t)]
        samples = [_nystrom_selection(a, config, c, s) for s in seeds]
        return ensemble_nystrom(a, samples).matrix()
    sel = _nystrom_selection(a, config, c, seed)
    if config.variant == "standard":
        return standard_nystrom(a, sel).matrix()
    if config.variant == "standard-k":
        return standard_nystrom(a, sel, rank_restrict=config.k).matrix()
    return modified_nystrom(a, sel).matrix()


def _cur_feasibility(config, m, n, c, r) -> str | None:
    if config.method == "adaptive":
        # adaptive second-round rows are i.i.d., so r may exceed m
        if c >= min(m, n):
            return f"c={c} reaches min(m,n)={min(m, n)}"
        if r <= c:
            return f"r={r} leaves no adaptive rows beyond r1={c}"
        if c < config.k + 2:
            return f"c={c} below the minimum budget {config.k + 2}"
    else:
        if c > n or r > m:
            return f"(c={c}, r={r}) exceeds the matrix size {m}x{n}"
    return None


def _nystrom_feasibility(config, m, c) -> str | None:
    if config.method == "adaptive":
        if c >= m:
            return f"c={c} reaches m={m}"
        if c < config.k + 3:
            return f"c={c} below the minimum budget {config.k + 3}"
    elif config.method == "uniform" and c > m:
        return f"c={c} exceeds m={m}"
    elif c > m:
        return f"c={c} exceeds m={m}"
    return None


def _grid(config, a, for_cur: bool):
    """Yield (c, r) grid points; r is 0 for column-only tasks."""
    m, n = a.shape
    if config.epsilon is not None:
        c = ColSelectParams.from_epsilon(config.k, config.epsilon).total_columns
        if for_cur:
            yield c, c + math.ceil(c / config.epsilon)
        else:
            yield c + math.ceil(c / config.epsilon), 0
        return
    for mult in config.a_values:
        c = int(round(mult * config.k))
        yield (c, int(round(mult * c))) if for_cur else (c, 0)


def _run_repeats(fn, config):
    """Run fn(seed) for each repeat with seeds seed+i; returns values and time."""
    values = []
    elapsed = 0.0
    for i in range(config.repeats):
        start = time.perf_counter()
        values.append(fn(config.seed + i))
        elapsed += time.perf_counter() - start
    return values, elapsed


def run_experiment(config: ExperimentConfig) -> list[ResultRecord]:
    """Execute the configured task over its grid and return result records."""
    a = load_input(config)
    m, n = a.shape
    records: list[ResultRecord] = []

    if config.task == "cur":
        for c, r in _grid(config, a, for_cur=True):
            reason = _cur_feasibility(config, m, n, c, r)
            if reason is not None:
                records.append(ResultRecord(config.method, "cur", config.k, c, r,
                                            math.nan, 0.0, config.seed, skipped=reason))
                continue
            ratios, secs = _run_repeats(
                lambda s: error_ratio(a, _cur_point(a, config, c, r, s), config.k), config
            )
            records.append(ResultRecord(config.method, "cur", config.k, c, r,
                                        min(ratios), secs, config.seed, per_repeat=ratios))
        return records

    if config.task == "nystrom":
        sym = symmetrize(a)
        for c, _ in _grid(config, sym, for_cur=False):
            reason = _nystrom_feasibility(config, m, c)
            if reason is not None:
                records.append(ResultRecord(config.method, config.variant, config.k, c, 0,
                                            math.nan, 0.0, config.seed, skipped=reason))
                continue
            ratios, secs = _run_repeats(
                lambda s: error_ratio(sym, _nystrom_point(sym, config, c, s), config.k), config
            )
            records.append(ResultRecord(config.method, config.variant, config.k, c, 0,
                                        min(ratios), secs, config.seed, per_repeat=ratios))
        return records

    # lowerbound task: closed-form oracle vs measured residual norms
    if config.adversarial is None:
        raise ValueError("the lowerbound task requires an adversarial input spec")
    spec = config.adversarial
    for c, _ in _grid(config, a, for_cur=False):
        if c >= m:
            records.append(ResultRecord("standard", "lowerbound", config.k, c, 0,
                                        math.nan, 0.0, config.seed,
                                        skipped=f"c={c} reaches m={m}"))
            continue
        records.extend(_lowerbound_records(a, spec, config, c))
    return records


def _residual_norms(a, approx):
    s = np.linalg.svd(a - approx, compute_uv=False)
    return {
        "frobenius": float(np.sqrt(np.sum(s * s))),
        "spectral": float(s[0]),
        "nuclear": float(np.sum(s)),
    }


def _lowerbound_records(a, spec, config, c) -> list[ResultRecord]:
    m = a.shape[0]
    records = []
    bounds = standard_lower_bounds(spec, c, config.k)
    norms_checked = ("frobenius", "spectral", "nuclear") if spec.family == "single" \
        else ("frobenius", "nuclear")

    def run_standard(seed):
        sel = sample_without_replacement(uniform_distribution(m), c, seed)
        return _residual_norms(a, standard_nystrom(a, sel).matrix())

    measured, secs = _run_repeats(run_standard, config)
    for norm in norms_checked:
        values = [rep[norm] for rep in measured]
        records.append(ResultRecord(
            "standard", f"lowerbound-{norm}", config.k, c, 0,
            min(values) / bounds[norm], secs, config.seed,
            per_repeat=values, bound=bounds[norm], measured=min(values),
        ))

    if config.ensemble_t > 1:
        t = config.ensemble_t
        if t * c > m:
            records.append(ResultRecord(
                "ensemble", "lowerbound", config.k, c, 0, math.nan, 0.0, config.seed,
                skipped=f"t*c = {t * c} exceeds m = {m}; disjoint samples impossible",
            ))
            return records
        ens_bounds = ensemble_lower_bounds(spec, c, config.k, t)

        def run_ensemble(seed):
            samples = disjoint_uniform_selections(m, c, t, seed)
            return _residual_norms(a, ensemble_nystrom(a, samples).matrix())

        measured, secs = _run_repeats(run_ensemble, config)
        for norm in ("frobenius", "nuclear"):
            values = [rep[norm] for rep in measured]
            records.append(ResultRecord(
                "ensemble", f"lowerbound-{norm}", config.k, c, 0,
                min(values) / ens_bounds[norm], secs, config.seed,
                per_repeat=values, bound=ens_bounds[norm], measured=min(values),
            ))
    return records


# ---------------------------------------------------------------- emission


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def serialize_records(records: list[ResultRecord], format: str) -> str:
    """Render records as CSV (fixed header, successes only) or JSON."""
    if format == "csv":
        lines = [CSV_HEADER]
        for rec in records:
            if rec.skipped is not None:
                continue
            lines.append(",".join([
                rec.method, rec.variant, str(rec.k), str(rec.c), str(rec.r),
                _fmt(rec.error_ratio), _fmt(rec.seconds), str(rec.seed),
            ]))
        return "\n".join(lines) + "\n"
    if format == "json":
        payload = []
        for rec in records:
            entry = {
                "method": rec.method,
                "variant": rec.variant,
                "k": rec.k,
                "c": rec.c,
                "r": rec.r,
                "error_ratio": None if math.isnan(rec.error_ratio) else float(_fmt(rec.error_ratio)),
                "seconds": float(_fmt(rec.seconds)),
                "seed": rec.seed,
                "per_repeat": [float(_fmt(v)) for v in rec.per_repeat],
            }
            if rec.bound is not None:
                entry["bound"] = float(_fmt(rec.bound))
                entry["measured"] = float(_fmt(rec.measured))
            if rec.skipped is not None:
                entry["skipped"] = rec.skipped
            payload.append(entry)
        return json.dumps(payload, indent=2) + "\n"
    raise ValueError(f"unknown output format {format!r}; use 'csv' or 'json'")


def emit(records: list[ResultRecord], format: str, path: str) -> None:
    """Write serialized records to `path`."""
    text = serialize_records(records, format)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


# ---------------------------------------------------------------- CLI


def _parse_adversarial(text: str) -> AdversarialSpec:
    try:
        family, _, fields = text.partition(":")
        kwargs = {}
        for item in fields.split(","):
            key, _, value = item.partition("=")
            key = key.strip()
            if key == "m":
                kwargs["m"] = int(value)
            elif key == "alpha":
                kwargs["alpha"] = float(value)
            elif key == "k":
                kwargs["k"] = int(value)
            else:
                raise ValueError(f"unknown field {key!r}")
        return AdversarialSpec(family=family.strip(), **kwargs)
    except (ValueError, TypeError) as exc:
        raise UsageError(
            f"bad adversarial spec {text!r} (expected e.g. 'single:m=100,alpha=0.8' "
            f"or 'blockdiag:m=120,k=4,alpha=0.8'): {exc}"
        ) from exc


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="curnystrom", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(p):
        p.add_argument("--input", help="matrix file (Matrix Market or dense CSV)")
        p.add_argument("--format", choices=["matrix-market", "dense-csv"],
                       help="input format (inferred from the file when omitted)")
        p.add_argument("--points", help="dense CSV of points for an RBF kernel input")
        p.add_argument("--sigma", type=float, help="RBF kernel scale")
        p.add_argument("--adversarial", help="adversarial spec, e.g. single:m=100,alpha=0.8")
        p.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM,
                       help="refuse inputs larger than this in either dimension")

    def add_run(p):
        p.add_argument("--k", type=int, required=True, help="target rank")
        p.add_argument("--a", help="comma-separated multipliers; c = a*k (CUR also r = a*c)")
        p.add_argument("--epsilon", type=float, help="error parameter (adaptive method only)")
        p.add_argument("--method", choices=["adaptive", "subspace", "uniform"],
                       default="adaptive")
        p.add_argument("--repeats", type=int, default=1)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", help="output path (stdout when omitted)")
        p.add_argument("--out-format", choices=["csv", "json"], default="csv")

    p_cur = sub.add_parser("cur", help="CUR decomposition error-ratio experiment")
    add_io(p_cur)
    add_run(p_cur)

    p_nys = sub.add_parser("nystrom", help="Nystrom approximation error-ratio experiment")
    add_io(p_nys)
    add_run(p_nys)
    p_nys.add_argument("--variant", choices=["standard", "standard-k", "ensemble", "modified"],
                       default="modified")
    p_nys.add_argument("--ensemble-t", type=int, default=1, help="ensemble sample count")

    p_low = sub.add_parser("lowerbound", help="closed-form lower bounds vs measured residuals")
    add_io(p_low)
    add_run(p_low)
    p_low.add_argument("--ensemble-t", type=int, default=1,
                       help="also check the ensemble bounds with this many disjoint samples")

    p_ker = sub.add_parser("kernel", help="build an RBF kernel matrix and write it as CSV")
    p_ker.add_argument("--points", required=True)
    p_ker.add_argument("--sigma", type=float, required=True)
    p_ker.add_argument("--out", help="output path (stdout when omitted)")
    p_ker.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM)
    return parser


def _config_from_args(args) -> ExperimentConfig:
    a_values = None
    if args.a is not None:
        try:
            a_values = tuple(float(tok) for tok in args.a.split(","))
        except ValueError as exc:
            raise UsageError(f"bad --a list {args.a!r}") from exc
    adversarial = _parse_adversarial(args.adversarial) if args.adversarial else None
    return ExperimentConfig(
        task=args.command,
        k=args.k,
        method=args.method,
        variant=getattr(args, "variant", "modified"),
        input_path=args.input,
        input_format=args.format,
        points_path=args.points,
        sigma=args.sigma,
        adversarial=adversarial,
        a_values=a_values,
        epsilon=args.epsilon,
        ensemble_t=getattr(args, "ensemble_t", 1),
        repeats=args.repeats,
        seed=args.seed,
        max_dim=args.max_dim,
    )


def _write_out(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "kernel":
            pts = ingest(args.points, "dense-csv", args.max_dim)
            kernel = build_rbf_kernel(pts, args.sigma)
            text = "\n".join(",".join(_fmt(v) for v in row) for row in kernel) + "\n"
            _write_out(text, args.out)
            return 0
        config = _config_from_args(args)
        records = run_experiment(config)
        _write_out(serialize_records(records, args.out_format), args.out)
        return 0
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
