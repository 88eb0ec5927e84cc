"""Timed, seeded K-means vs FCM comparison, JSON report and plot-data files."""

from __future__ import annotations

import json
import statistics
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .complexity import complexity_table
from .core import ClusterBenchError, ContractViolation, RandomStream, derive_stream
from .fcm import CRITERIA, FcmConfig, FcmResult, run_fcm
from .ingest import LabeledDataset
from .kmeans import KMeansConfig, KMeansResult, run_kmeans_replicated

SCHEMA = "clusterbench-report/1"
KMEANS_TAG = 1
FCM_TAG = 2

# operation-count table parameters used for the reference complexity rows
TABLE_N, TABLE_D, TABLE_I = 200, 4, 28


def stream_label(tag: int, clusters: int) -> int:
    return (tag << 32) | clusters


@dataclass
class BenchConfig:
    cluster_counts: list[int]
    replicates: int = 5
    seed: int = 42
    m: float = 2.0
    epsilon: float = 1e-6
    max_iterations: int = 100
    criterion: str = "membership_delta"
    timing_repeats: int = 3

    def check(self, n: int) -> None:
        if not self.cluster_counts:
            raise ContractViolation("cluster_counts must not be empty")
        if self.timing_repeats < 1:
            raise ContractViolation("timing_repeats must be >= 1")
        if self.replicates < 1:
            raise ContractViolation("replicates must be >= 1")
        if self.criterion not in CRITERIA:
            raise ContractViolation(f"unknown criterion {self.criterion!r}")
        for c in self.cluster_counts:
            if not 1 <= c <= n:
                raise ContractViolation(f"cluster count {c} outside [1, {n}]")

    def fcm_config(self, c: int) -> FcmConfig:
        return FcmConfig(c, self.m, self.epsilon, self.max_iterations, self.criterion)

    def kmeans_config(self, c: int) -> KMeansConfig:
        return KMeansConfig(c, self.max_iterations, self.replicates)


@dataclass
class ClusterRun:
    algorithm: str
    clusters: int
    result: KMeansResult | FcmResult


@dataclass
class BenchEntry:
    algorithm: str
    clusters: int
    elapsed_seconds: float | None
    elapsed_repeats: list[float]
    iterations: int | None
    objective: float | None
    converged: bool | None
    skipped: bool = False
    skip_reason: str | None = None
    replicates: list[dict] | None = None
    config: dict = field(default_factory=dict)


@dataclass
class BenchReport:
    dataset_summary: dict
    config: dict
    entries: list[BenchEntry]
    complexity_rows: dict
    schema: str = SCHEMA
    # in-memory only; needed to emit plot data
    data: np.ndarray | None = field(default=None, repr=False, compare=False)
    runs: list[ClusterRun] = field(default_factory=list, repr=False, compare=False)

    def to_dict(self) -> dict:
        return {
            "schema": self.schema,
            "dataset_summary": self.dataset_summary,
            "config": self.config,
            "entries": [asdict(e) for e in self.entries],
            "complexity_rows": self.complexity_rows,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def time_run(task):
    """Call ``task()`` and return ``(result, elapsed_seconds)`` on the monotonic clock."""
    start = time.perf_counter()
    result = task()
    return result, time.perf_counter() - start


def _timed(task, repeats: int):
    result, first = time_run(task)
    samples = [first]
    for _ in range(repeats - 1):
        _, elapsed = time_run(task)
        samples.append(elapsed)
    return result, statistics.median(samples), samples


def run_comparison(ds: LabeledDataset, config: BenchConfig) -> BenchReport:
    """Replicated K-means and one FCM run per cluster count, each timed ``timing_repeats`` times.

    FCM entries for ``c = 1`` are marked skipped. Observed complexity rows use
    the FCM iteration count measured for that cluster count; reference rows
    use the fixed table parameters ``TABLE_N, TABLE_D, TABLE_I``.
    """
    data = ds.data
    n, d = data.shape
    config.check(n)
    base = RandomStream(config.seed)
    entries: list[BenchEntry] = []
    runs: list[ClusterRun] = []
    observed = []
    for c in config.cluster_counts:
        km_cfg = config.kmeans_config(c)
        km_stream = stream_label(KMEANS_TAG, c)
        (best, all_runs), median, samples = _timed(
            lambda: run_kmeans_replicated(data, km_cfg, derive_stream(base, km_stream)),
            config.timing_repeats,
        )
        entries.append(BenchEntry(
            "kmeans", c, median, samples, best.iterations, best.total_sumd, best.converged,
            replicates=[
                {"replicate": r.replicate_index + 1, "iterations": r.iterations,
                 "total_sumd": r.total_sumd, "converged": r.converged}
                for r in all_runs
            ],
            config={**asdict(km_cfg), "seed": config.seed, "stream_label": km_stream,
                    "best_replicate": best.replicate_index + 1},
        ))
        runs.append(ClusterRun("kmeans", c, best))

        if c < 2:
            entries.append(BenchEntry("fcm", c, None, [], None, None, None, skipped=True,
                                      skip_reason="FCM requires at least two clusters"))
            continue
        fcm_cfg = config.fcm_config(c)
        fcm_stream = stream_label(FCM_TAG, c)
        result, median, samples = _timed(
            lambda: run_fcm(data, fcm_cfg, derive_stream(base, fcm_stream)),
            config.timing_repeats,
        )
        entries.append(BenchEntry(
            "fcm", c, median, samples, result.iterations, result.objective_history[-1],
            result.converged,
            config={**asdict(fcm_cfg), "seed": config.seed, "stream_label": fcm_stream},
        ))
        runs.append(ClusterRun("fcm", c, result))
        observed.extend(complexity_table(n, d, result.iterations, [c]))

    complexity_rows = {
        "observed": {
            "note": "n and d from the dataset; i = FCM iterations observed for that cluster count; "
                    "cluster counts without an FCM run are omitted",
            "rows": [dict(row.as_dict(), experiment_index=k, n=n, d=d, i=_iters(entries, row.clusters))
                     for k, row in enumerate(observed, start=1)],
        },
        "reference": {
            "n": TABLE_N, "d": TABLE_D, "i": TABLE_I,
            "rows": [row.as_dict() for row in
                     complexity_table(TABLE_N, TABLE_D, TABLE_I, config.cluster_counts)],
        },
    }
    summary = {"n": n, "d": d, "source": ds.source, "checksum": ds.checksum}
    return BenchReport(summary, asdict(config), entries, complexity_rows, data=data, runs=runs)


def _iters(entries, c):
    return next(e.iterations for e in entries if e.algorithm == "fcm" and e.clusters == c)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def _write_csv(path: Path, header: list[str], rows) -> Path:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise ClusterBenchError(f"cannot write {path}: {exc}") from exc
    return path


def _coords(data: np.ndarray) -> list[str]:
    return [f"x_{t}" for t in range(data.shape[1])]


def write_labels(path, data: np.ndarray, result: KMeansResult) -> Path:
    """``point, x_0..x_{d-1}, label``"""
    rows = ([i, *data[i].tolist(), int(result.assignment[i])] for i in range(data.shape[0]))
    return _write_csv(Path(path), ["point", *_coords(data), "label"], rows)


def write_memberships(path, data: np.ndarray, result: FcmResult) -> Path:
    """``point, x_0..x_{d-1}, u_0..u_{c-1}``"""
    c = result.membership.shape[1]
    rows = ([i, *data[i].tolist(), *result.membership[i].tolist()] for i in range(data.shape[0]))
    return _write_csv(Path(path), ["point", *_coords(data), *(f"u_{j}" for j in range(c))], rows)


def write_objective_history(path, result: FcmResult) -> Path:
    rows = ([k, v] for k, v in enumerate(result.objective_history, start=1))
    return _write_csv(Path(path), ["iteration", "objective"], rows)


def emit_plot_data(report: BenchReport, results: list[ClusterRun], destination) -> list[Path]:
    """Write plot-ready CSV files and return their paths.

    Per cluster count ``c``: ``kmeans_labels_k{c}.csv``, ``fcm_membership_c{c}.csv``
    and ``fcm_objective_c{c}.csv``. Once per report: ``elapsed_times.csv``
    (``clusters, kmeans_seconds, fcm_seconds``) and ``complexity.csv``
    (``set, experiment_index, clusters, n, d, i, kmeans_ops, fcm_ops``).
    """
    if not results:
        raise ClusterBenchError("nothing to emit")
    if report.data is None:
        raise ClusterBenchError("report carries no data matrix; rerun the comparison")
    dest = Path(destination)
    try:
        dest.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ClusterBenchError(f"cannot create {dest}: {exc}") from exc
    data = report.data
    written = []
    for run in results:
        if run.algorithm == "kmeans":
            written.append(write_labels(dest / f"kmeans_labels_k{run.clusters}.csv", data, run.result))
        else:
            written.append(write_memberships(dest / f"fcm_membership_c{run.clusters}.csv", data, run.result))
            written.append(write_objective_history(dest / f"fcm_objective_c{run.clusters}.csv", run.result))

    by_c: dict[int, dict[str, float | None]] = {}
    for e in report.entries:
        by_c.setdefault(e.clusters, {})[e.algorithm] = e.elapsed_seconds
    written.append(_write_csv(
        dest / "elapsed_times.csv", ["clusters", "kmeans_seconds", "fcm_seconds"],
        ([c, t.get("kmeans"), t.get("fcm")] for c, t in by_c.items()),
    ))

    ref = report.complexity_rows["reference"]
    table = [["observed", r["experiment_index"], r["clusters"], r["n"], r["d"], r["i"],
              r["kmeans_ops"], r["fcm_ops"]] for r in report.complexity_rows["observed"]["rows"]]
    table += [["reference", r["experiment_index"], r["clusters"], ref["n"], ref["d"], ref["i"],
               r["kmeans_ops"], r["fcm_ops"]] for r in ref["rows"]]
    written.append(_write_csv(
        dest / "complexity.csv",
        ["set", "experiment_index", "clusters", "n", "d", "i", "kmeans_ops", "fcm_ops"], table,
    ))
    return written
