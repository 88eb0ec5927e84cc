"""Deterministic K-means and fuzzy c-means with a reproducible comparison harness."""

from .bench import BenchConfig, BenchReport, emit_plot_data, run_comparison, time_run
from .complexity import ComplexityInputs, ComplexityRow, complexity_table, fcm_op_count, kmeans_op_count
from .core import (
    ClusterBenchError,
    ContractViolation,
    RandomStream,
    derive_stream,
    squared_euclidean,
    validate_data,
)
from .fcm import (
    FcmConfig,
    FcmResult,
    fcm_objective,
    init_membership,
    run_fcm,
    update_centers,
    update_membership,
)
from .ingest import LabeledDataset, ParseError, generate_blobs, load_csv, load_iris, select_features
from .kmeans import (
    KMeansConfig,
    KMeansResult,
    assign_points,
    init_centroids,
    kmeans_objective,
    recompute_centroids,
    run_kmeans_once,
    run_kmeans_replicated,
)

__version__ = "0.1.0"
