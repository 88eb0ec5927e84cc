"""Hard K-means (Lloyd iterations) with seeded replicated restarts."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import ContractViolation, RandomStream, as_data_matrix, derive_stream, pairwise_squared


@dataclass(frozen=True)
class KMeansConfig:
    k: int
    max_iterations: int = 100
    replicates: int = 1

    def check(self, n: int) -> None:
        if self.k < 1:
            raise ContractViolation("k must be >= 1")
        if self.k > n:
            raise ContractViolation("more clusters than points")
        if self.max_iterations < 1:
            raise ContractViolation("max_iterations must be >= 1")
        if self.replicates < 1:
            raise ContractViolation("replicates must be >= 1")


@dataclass
class KMeansResult:
    assignment: np.ndarray
    centroids: np.ndarray
    per_cluster_sumd: np.ndarray
    total_sumd: float
    iterations: int
    converged: bool
    replicate_index: int = 0
    # objective after every assignment pass; non-increasing
    objective_history: list[float] = field(default_factory=list)


def init_centroids(data, k: int, rng: RandomStream) -> np.ndarray:
    """Pick ``k`` distinct rows uniformly without replacement (partial Fisher-Yates)."""
    data = np.asarray(data, dtype=np.float64)
    n = data.shape[0]
    if k < 1:
        raise ContractViolation("k must be >= 1")
    if k > n:
        raise ContractViolation("more clusters than points")
    order = list(range(n))
    for i in range(k):
        j = i + rng.next_below(n - i)
        order[i], order[j] = order[j], order[i]
    return data[order[:k]].copy()


def assign_points(data, centroids) -> tuple[np.ndarray, np.ndarray]:
    """Nearest-centroid labels (lowest index wins ties) and the minimized distances."""
    d2 = pairwise_squared(np.asarray(data, dtype=np.float64), np.asarray(centroids, dtype=np.float64))
    labels = np.argmin(d2, axis=1)
    return labels, d2[np.arange(len(labels)), labels]


def _cluster_means(data: np.ndarray, labels: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray]:
    counts = np.bincount(labels, minlength=k)
    sums = np.stack([np.bincount(labels, weights=col, minlength=k) for col in data.T], axis=1)
    nonempty = counts > 0
    centroids = np.zeros_like(sums)
    centroids[nonempty] = sums[nonempty] / counts[nonempty, None]
    return centroids, counts


def _recompute(data: np.ndarray, labels: np.ndarray, k: int):
    """Means plus singleton repair; returns ``(centroids, labels, repaired)``."""
    labels = labels.copy()
    centroids, counts = _cluster_means(data, labels, k)
    repaired = []
    for j in np.flatnonzero(counts == 0):
        own = ((data - centroids[labels]) ** 2).sum(axis=1)
        # a donor must keep at least one member
        own[counts[labels] < 2] = -1.0
        p = int(np.argmax(own))
        donor = labels[p]
        labels[p] = j
        counts[donor] -= 1
        counts[j] = 1
        centroids[j] = data[p]
        centroids[donor] = data[labels == donor].mean(axis=0)
        repaired.append(int(j))
    return centroids, labels, repaired


def recompute_centroids(data, assignment, k: int) -> tuple[np.ndarray, list[int]]:
    """Cluster means; an empty cluster takes over the point farthest from its own centroid."""
    data = np.asarray(data, dtype=np.float64)
    assignment = np.asarray(assignment)
    if assignment.shape != (data.shape[0],) or assignment.min() < 0 or assignment.max() >= k:
        raise ContractViolation("assignment does not match data and k")
    centroids, _, repaired = _recompute(data, assignment, k)
    return centroids, repaired


def kmeans_objective(data, assignment, centroids) -> float:
    data = np.asarray(data, dtype=np.float64)
    centroids = np.asarray(centroids, dtype=np.float64)
    d2 = pairwise_squared(data, centroids)
    return float(d2[np.arange(data.shape[0]), np.asarray(assignment)].sum())


def _finish(data, labels, dist, centroids, iterations, converged, history) -> KMeansResult:
    k = centroids.shape[0]
    per_cluster = np.bincount(labels, weights=dist, minlength=k)
    return KMeansResult(
        assignment=labels,
        centroids=centroids,
        per_cluster_sumd=per_cluster,
        total_sumd=float(per_cluster.sum()),
        iterations=iterations,
        converged=converged,
        objective_history=history,
    )


def lloyd(data, initial_centroids, max_iterations: int = 100) -> KMeansResult:
    """Alternate assignment and mean updates until the assignment stops changing.

    One iteration is one assignment pass. On convergence the centroids are the
    means of the returned assignment; when ``max_iterations`` runs out, the
    centroids are those the final assignment was computed against.
    """
    data = as_data_matrix(data)
    centroids = np.array(initial_centroids, dtype=np.float64)
    k = centroids.shape[0]
    previous = None
    history: list[float] = []
    for iteration in range(1, max_iterations + 1):
        labels, dist = assign_points(data, centroids)
        history.append(float(dist.sum()))
        if previous is not None and np.array_equal(labels, previous):
            return _finish(data, labels, dist, centroids, iteration, True, history)
        if iteration == max_iterations:
            break
        centroids, previous, _ = _recompute(data, labels, k)
    return _finish(data, labels, dist, centroids, max_iterations, False, history)


def run_kmeans_once(data, config: KMeansConfig, rng: RandomStream) -> KMeansResult:
    data = as_data_matrix(data)
    config.check(data.shape[0])
    return lloyd(data, init_centroids(data, config.k, rng), config.max_iterations)


def run_kmeans_replicated(data, config: KMeansConfig, rng: RandomStream):
    """Run ``config.replicates`` restarts; replicate ``r`` uses ``derive_stream(rng, r)``.

    Returns ``(best, all_results)``. The best run has the smallest
    ``total_sumd``; ties go to the lower replicate index.
    """
    data = as_data_matrix(data)
    config.check(data.shape[0])
    runs = []
    for r in range(config.replicates):
        result = run_kmeans_once(data, config, derive_stream(rng, r))
        result.replicate_index = r
        runs.append(result)
    best = min(runs, key=lambda res: (res.total_sumd, res.replicate_index))
    return best, runs
