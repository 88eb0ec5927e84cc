"""Slow, independent reference implementations used to check the library.

Nothing here imports clusterbench; everything is plain Python floats and loops.
"""

from __future__ import annotations

import itertools
import math

M64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed):
        self.state = seed & M64

    @staticmethod
    def mix(z):
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & M64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & M64
        return z ^ (z >> 31)

    def next(self):
        self.state = (self.state + 0x9E3779B97F4A7C15) & M64
        return self.mix(self.state)

    def unit(self):
        return ((self.next() >> 11) + 0.5) / 2.0**53


def sq(a, b):
    return sum((x - y) ** 2 for x, y in zip(a, b))


def sse(points):
    """Sum of squared distances of ``points`` to their mean."""
    d = len(points[0])
    mean = [sum(p[t] for p in points) / len(points) for t in range(d)]
    return sum(sq(p, mean) for p in points)


def best_two_partition(points):
    """Minimum K-means objective over every split into two nonempty groups."""
    n = len(points)
    best = math.inf
    # point 0 always in group A: each unordered split is visited once
    for mask in range(0, 1 << (n - 1)):
        a = [points[0]] + [points[i] for i in range(1, n) if mask >> (i - 1) & 1]
        b = [points[i] for i in range(1, n) if not mask >> (i - 1) & 1]
        if not b:
            continue
        best = min(best, sse(a) + sse(b))
    return best


def fcm_centers(X, U, m):
    c = len(U[0])
    d = len(X[0])
    out = []
    for j in range(c):
        w = [U[i][j] ** m for i in range(len(X))]
        total = sum(w)
        out.append([sum(w[i] * X[i][t] for i in range(len(X))) / total for t in range(d)])
    return out


def fcm_membership(X, C, m):
    """u_ij = 1 / sum_k (|x_i - c_j| / |x_i - c_k|) ** (2 / (m - 1)) with Euclidean norms."""
    U = []
    for x in X:
        dist = [math.sqrt(sq(x, cj)) for cj in C]
        U.append([1.0 / sum((dist[j] / dist[k]) ** (2.0 / (m - 1.0)) for k in range(len(C)))
                  for j in range(len(C))])
    return U


def fcm_objective(X, U, C, m):
    return sum(U[i][j] ** m * sq(X[i], C[j]) for i in range(len(X)) for j in range(len(C)))


def fcm_initial_membership(n, c, seed):
    rng = SplitMix64(seed)
    U = []
    for _ in range(n):
        row = [rng.unit() for _ in range(c)]
        s = sum(row)
        U.append([v / s for v in row])
    return U


def fcm_run(X, U, m, eps, max_iter, criterion="membership_delta"):
    """Centers from U, then U from centers, repeated; returns (C, U, history)."""
    history = []
    C = fcm_centers(X, U, m)
    for _ in range(max_iter):
        U_new = fcm_membership(X, C, m)
        C = fcm_centers(X, U_new, m)
        history.append(fcm_objective(X, U_new, C, m))
        delta = max(abs(a - b) for ra, rb in zip(U_new, U) for a, b in zip(ra, rb))
        U = U_new
        if criterion == "membership_delta" and delta < eps:
            break
        if criterion == "objective_improvement" and len(history) > 1 and abs(history[-1] - history[-2]) < eps:
            break
    return C, U, history


def kmeans_all_labelings(points, k):
    """Yield every labeling of ``points`` into ``k`` groups (for tiny n only)."""
    yield from itertools.product(range(k), repeat=len(points))
