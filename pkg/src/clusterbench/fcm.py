"""Fuzzy C-means by alternating center and membership updates."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import ContractViolation, RandomStream, as_data_matrix, pairwise_squared

CRITERIA = ("membership_delta", "objective_improvement")


@dataclass(frozen=True)
class FcmConfig:
    c: int
    m: float = 2.0
    epsilon: float = 1e-6
    max_iterations: int = 100
    criterion: str = "membership_delta"

    def check(self, n: int) -> None:
        if self.c < 2:
            raise ContractViolation("FCM requires at least two clusters")
        if self.c > n:
            raise ContractViolation("more clusters than points")
        if not self.m > 1:
            raise ContractViolation("fuzzifier m must be > 1")
        if not 0 < self.epsilon < 1:
            raise ContractViolation("epsilon must lie in (0, 1)")
        if self.max_iterations < 1:
            raise ContractViolation("max_iterations must be >= 1")
        if self.criterion not in CRITERIA:
            raise ContractViolation(f"unknown criterion {self.criterion!r}; expected one of {CRITERIA}")


@dataclass
class FcmResult:
    centers: np.ndarray
    membership: np.ndarray
    objective_history: list[float] = field(default_factory=list)
    iterations: int = 0
    converged: bool = False


def init_membership(n: int, c: int, rng: RandomStream) -> np.ndarray:
    """Random row-stochastic matrix; rows are drawn in order, ``c`` uniforms each."""
    if c < 2:
        raise ContractViolation("FCM requires at least two clusters")
    if n < 1:
        raise ContractViolation("n must be >= 1")
    u = rng.floats(n * c).reshape(n, c)
    return u / u.sum(axis=1, keepdims=True)


def update_centers(data, u, m: float) -> np.ndarray:
    """Each center is the ``u**m``-weighted mean of all rows."""
    data = np.asarray(data, dtype=np.float64)
    w = np.asarray(u, dtype=np.float64) ** m
    totals = w.sum(axis=0)
    if np.any(totals <= 0):
        raise ContractViolation("degenerate cluster weight")
    return (w.T @ data) / totals[:, None]


def update_membership(data, centers, m: float) -> np.ndarray:
    """Membership from distance ratios.

    ``u[i, j] = 1 / sum_k (d2[i, j] / d2[i, k]) ** (1 / (m - 1))`` on squared
    distances. A point sitting on one or more centers splits its mass equally
    among them.
    """
    if not m > 1:
        raise ContractViolation("fuzzifier m must be > 1")
    d2 = pairwise_squared(np.asarray(data, dtype=np.float64), np.asarray(centers, dtype=np.float64))
    zero = d2 == 0.0
    hit = zero.any(axis=1)
    u = np.empty_like(d2)
    if hit.any():
        u[hit] = zero[hit] / zero[hit].sum(axis=1, keepdims=True)
    rest = ~hit
    if rest.any():
        r = d2[rest]
        with np.errstate(over="ignore"):
            ratios = (r[:, :, None] / r[:, None, :]) ** (1.0 / (m - 1.0))
        u[rest] = 1.0 / ratios.sum(axis=2)
    return u


def fcm_objective(data, u, centers, m: float) -> float:
    d2 = pairwise_squared(np.asarray(data, dtype=np.float64), np.asarray(centers, dtype=np.float64))
    return float((np.asarray(u, dtype=np.float64) ** m * d2).sum())


def iterate_fcm(data, u0, config: FcmConfig) -> FcmResult:
    """Run the alternating updates from a given initial membership matrix.

    Each iteration computes the membership from the current centers and then
    the centers from that membership, so the returned centers always satisfy
    the center formula for the returned membership. ``objective_history[k]``
    is the objective of that pair after iteration ``k + 1``.
    """
    data = as_data_matrix(data)
    config.check(data.shape[0])
    m = config.m
    u = np.array(u0, dtype=np.float64)
    if u.shape != (data.shape[0], config.c):
        raise ContractViolation(f"initial membership must have shape {(data.shape[0], config.c)}")
    centers = update_centers(data, u, m)
    history: list[float] = []
    for _ in range(config.max_iterations):
        u_next = update_membership(data, centers, m)
        centers = update_centers(data, u_next, m)
        history.append(fcm_objective(data, u_next, centers, m))
        if config.criterion == "membership_delta":
            done = float(np.abs(u_next - u).max()) < config.epsilon
        else:
            done = len(history) > 1 and abs(history[-1] - history[-2]) < config.epsilon
        u = u_next
        if done:
            return FcmResult(centers, u, history, len(history), True)
    return FcmResult(centers, u, history, len(history), False)


def run_fcm(data, config: FcmConfig, rng: RandomStream) -> FcmResult:
    data = as_data_matrix(data)
    config.check(data.shape[0])
    return iterate_fcm(data, init_membership(data.shape[0], config.c, rng), config)
