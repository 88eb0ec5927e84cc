"""Command-line entry point: ``clusterbench {kmeans,fcm,compare,complexity,fetch-data}``.

Exit status is 0 on success, 1 on runtime errors and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import bench
from .complexity import complexity_table
from .core import ClusterBenchError, RandomStream
from .fcm import CRITERIA, FcmConfig, run_fcm
from .ingest import IRIS_SHA256, IRIS_URL, default_data_dir, default_iris_path, fetch_iris, load_csv, select_features
from .kmeans import KMeansConfig, run_kmeans_replicated

DEFAULT_SEED = 42

log = logging.getLogger("clusterbench")


def parse_int_list(text: str) -> list[int]:
    """``"4"``, ``"1,2,3,4"``, ``"1..4"`` or mixtures such as ``"1..3,6"``."""
    values = []
    try:
        for part in text.split(","):
            part = part.strip()
            if ".." in part:
                lo, hi = (int(p) for p in part.split("..", 1))
                if hi < lo:
                    raise ValueError
                values.extend(range(lo, hi + 1))
            else:
                values.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid list or range: {text!r}") from None
    if any(v < 1 for v in values):
        raise argparse.ArgumentTypeError(f"values must be positive: {text!r}")
    return values


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text!r}")
    return value


def _seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _features(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid feature list: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentDefaultsHelpFormatter
    parser = argparse.ArgumentParser(prog="clusterbench", description=__doc__.splitlines()[0],
                                     formatter_class=fmt)
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    def data_args(p):
        p.add_argument("--input", type=Path, default=None,
                       help="delimited data file; None means $CLUSTERBENCH_DATA_DIR/iris.data, "
                            "else ./data/iris.data, else the packaged Iris copy")
        p.add_argument("--features", type=_features, default=None,
                       help="comma-separated column indices to keep, e.g. 0,1")
        p.add_argument("--seed", type=_seed, default=DEFAULT_SEED, help="base random seed")
        p.add_argument("--format", choices=("table", "json"), default="table", help="stdout format")
        p.add_argument("--out", type=Path, default=None, help="write output here instead of stdout")
        p.add_argument("--emit-plot-data", metavar="DIR", type=Path, default=None,
                       help="also write plot-ready CSV files into DIR")

    def fcm_args(p):
        p.add_argument("--m", type=float, default=2.0, help="fuzzifier exponent (> 1)")
        p.add_argument("--eps", type=float, default=1e-6, help="termination threshold in (0, 1)")
        p.add_argument("--criterion", choices=CRITERIA, default="membership_delta",
                       help="FCM stopping rule")

    p = sub.add_parser("kmeans", help="replicated K-means", formatter_class=fmt)
    data_args(p)
    p.add_argument("--clusters", type=_positive_int, default=4, help="number of clusters k")
    p.add_argument("--replicates", type=_positive_int, default=5, help="random restarts")
    p.add_argument("--max-iter", type=_positive_int, default=100, help="iteration cap per replicate")

    p = sub.add_parser("fcm", help="fuzzy c-means", formatter_class=fmt)
    data_args(p)
    p.add_argument("--clusters", type=_positive_int, default=4, help="number of clusters c (>= 2)")
    fcm_args(p)
    p.add_argument("--max-iter", type=_positive_int, default=100, help="iteration cap")

    p = sub.add_parser("compare", help="timed K-means vs FCM comparison report", formatter_class=fmt)
    data_args(p)
    p.add_argument("--clusters", type=parse_int_list, default=[4],
                   help="cluster counts: 4, 1,2,3,4 or 1..4")
    p.add_argument("--replicates", type=_positive_int, default=5, help="K-means restarts")
    fcm_args(p)
    p.add_argument("--max-iter", type=_positive_int, default=100, help="iteration cap for both algorithms")
    p.add_argument("--timing-repeats", type=_positive_int, default=3,
                   help="timed repeats per entry; the median is reported")

    p = sub.add_parser("complexity", help="operation-count table", formatter_class=fmt)
    p.add_argument("--n", type=_positive_int, default=bench.TABLE_N, help="number of points")
    p.add_argument("--d", type=_positive_int, default=bench.TABLE_D, help="dimension")
    p.add_argument("--i", type=_positive_int, default=bench.TABLE_I, help="iterations")
    p.add_argument("--clusters", type=parse_int_list, default=[1, 2, 3, 4],
                   help="cluster counts: 1,2,3,4 or 1..4")
    p.add_argument("--format", choices=("table", "json"), default="table", help="stdout format")
    p.add_argument("--out", type=Path, default=None, help="write output here instead of stdout")

    p = sub.add_parser("fetch-data", help="download and verify UCI iris.data", formatter_class=fmt)
    p.add_argument("--dest", type=Path, default=None,
                   help="target directory; None means $CLUSTERBENCH_DATA_DIR or ./data")
    p.add_argument("--url", default=IRIS_URL, help="download location")
    p.add_argument("--offline", action="store_true", help="skip the download and use the packaged copy")
    return parser


def _load(args):
    ds = load_csv(args.input or default_iris_path())
    if args.features is not None:
        ds = select_features(ds, args.features)
    log.info("loaded %s: %d x %d", ds.source, *ds.data.shape)
    return ds


def _emit(args, text: str) -> None:
    if args.out is None:
        sys.stdout.write(text)
        return
    try:
        args.out.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise ClusterBenchError(f"cannot write {args.out}: {exc}") from exc


def _plot_dir(args) -> Path | None:
    if args.emit_plot_data is None:
        return None
    try:
        args.emit_plot_data.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ClusterBenchError(f"cannot create {args.emit_plot_data}: {exc}") from exc
    return args.emit_plot_data


def cmd_kmeans(args) -> None:
    ds = _load(args)
    cfg = KMeansConfig(args.clusters, args.max_iter, args.replicates)
    (best, runs), elapsed = bench.time_run(
        lambda: run_kmeans_replicated(ds.data, cfg, RandomStream(args.seed)))
    if args.format == "json":
        text = json.dumps({
            "algorithm": "kmeans", "clusters": cfg.k, "seed": args.seed,
            "replicates": [{"replicate": r.replicate_index + 1, "iterations": r.iterations,
                            "total_sumd": r.total_sumd, "converged": r.converged} for r in runs],
            "best": {"replicate": best.replicate_index + 1, "total_sumd": best.total_sumd,
                     "per_cluster_sumd": best.per_cluster_sumd.tolist(),
                     "centroids": best.centroids.tolist(),
                     "assignment": best.assignment.tolist()},
            "elapsed_seconds": elapsed,
        }, indent=2) + "\n"
    else:
        lines = [f"Replicate {r.replicate_index + 1}, {r.iterations} iterations, "
                 f"total sum of distances = {r.total_sumd:.4f}." for r in runs]
        lines.append(f"Best total sum of distances = {best.total_sumd:.4f}")
        lines.append(f"Elapsed time: {elapsed:.6f} seconds")
        text = "\n".join(lines) + "\n"
    _emit(args, text)
    if (dest := _plot_dir(args)) is not None:
        bench.write_labels(dest / f"kmeans_labels_k{cfg.k}.csv", ds.data, best)


def cmd_fcm(args) -> None:
    ds = _load(args)
    cfg = FcmConfig(args.clusters, args.m, args.eps, args.max_iter, args.criterion)
    result, elapsed = bench.time_run(lambda: run_fcm(ds.data, cfg, RandomStream(args.seed)))
    if args.format == "json":
        text = json.dumps({
            "algorithm": "fcm", "clusters": cfg.c, "seed": args.seed, "m": cfg.m,
            "epsilon": cfg.epsilon, "criterion": cfg.criterion,
            "iterations": result.iterations, "converged": result.converged,
            "objective_history": result.objective_history,
            "centers": result.centers.tolist(), "membership": result.membership.tolist(),
            "elapsed_seconds": elapsed,
        }, indent=2) + "\n"
    else:
        lines = [f"Iteration count = {k}, obj. fcn = {v:.6f}"
                 for k, v in enumerate(result.objective_history, start=1)]
        lines.append(f"{'Converged' if result.converged else 'Stopped at iteration cap'} "
                     f"after {result.iterations} iterations")
        lines.append("Centers:")
        lines.extend("  " + "  ".join(f"{x:.6f}" for x in row) for row in result.centers)
        lines.append(f"Elapsed time: {elapsed:.6f} seconds")
        text = "\n".join(lines) + "\n"
    _emit(args, text)
    if (dest := _plot_dir(args)) is not None:
        bench.write_memberships(dest / f"fcm_membership_c{cfg.c}.csv", ds.data, result)
        bench.write_objective_history(dest / f"fcm_objective_c{cfg.c}.csv", result)


def _comparison_table(report: bench.BenchReport) -> str:
    lines = [f"{'algorithm':<9} {'clusters':>8} {'iterations':>10} {'objective':>14} "
             f"{'converged':>9} {'elapsed_s':>10}"]
    for e in report.entries:
        if e.skipped:
            lines.append(f"{e.algorithm:<9} {e.clusters:>8} skipped: {e.skip_reason}")
            continue
        lines.append(f"{e.algorithm:<9} {e.clusters:>8} {e.iterations:>10} {e.objective:>14.6f} "
                     f"{str(e.converged):>9} {e.elapsed_seconds:>10.6f}")
    return "\n".join(lines) + "\n"


def cmd_compare(args) -> None:
    ds = _load(args)
    cfg = bench.BenchConfig(
        cluster_counts=args.clusters, replicates=args.replicates, seed=args.seed, m=args.m,
        epsilon=args.eps, max_iterations=args.max_iter, criterion=args.criterion,
        timing_repeats=args.timing_repeats,
    )
    report = bench.run_comparison(ds, cfg)
    if args.out is not None:
        _emit(args, report.to_json())
        if args.format == "table":
            sys.stdout.write(_comparison_table(report))
    else:
        sys.stdout.write(report.to_json() if args.format == "json" else _comparison_table(report))
    if (dest := _plot_dir(args)) is not None:
        for path in bench.emit_plot_data(report, report.runs, dest):
            log.info("wrote %s", path)


def cmd_complexity(args) -> None:
    rows = complexity_table(args.n, args.d, args.i, args.clusters)
    if args.format == "json":
        text = json.dumps({"n": args.n, "d": args.d, "i": args.i,
                           "rows": [r.as_dict() for r in rows]}, indent=2) + "\n"
    else:
        lines = [f"{'Exp No.':<8} {'No. Of Clusters':>15} {'K-Means Complexity':>19} {'FCM Complexity':>15}"]
        lines.extend(f"{r.experiment_index:<8} {r.clusters:>15} {r.kmeans_ops:>19} {r.fcm_ops:>15}"
                     for r in rows)
        text = "\n".join(lines) + "\n"
    _emit(args, text)


def cmd_fetch_data(args) -> None:
    path = fetch_iris(args.dest if args.dest is not None else default_data_dir(), args.url, args.offline)
    print(f"{path}  sha256={IRIS_SHA256}")


COMMANDS = {
    "kmeans": cmd_kmeans,
    "fcm": cmd_fcm,
    "compare": cmd_compare,
    "complexity": cmd_complexity,
    "fetch-data": cmd_fetch_data,
}


def parse_and_dispatch(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        COMMANDS[args.command](args)
    except (ClusterBenchError, ValueError, OverflowError, OSError) as exc:
        print(f"clusterbench {args.command}: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(parse_and_dispatch())


if __name__ == "__main__":
    main()
