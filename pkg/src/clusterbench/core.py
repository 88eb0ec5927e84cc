"""Shared data model, distance kernel, validation and the seeded random stream.

Data matrices are plain ``float64`` numpy arrays of shape ``(n, d)``; centroid
sets are ``(k, d)`` arrays, hard assignments are integer vectors and membership
matrices are ``(n, c)`` row-stochastic arrays.

The random stream is SplitMix64 (Steele, Lea & Flood 2014), written out here so
that every draw is reproducible bit-for-bit in any language::

    state  = (state + 0x9E3779B97F4A7C15) mod 2**64
    z      = state
    z      = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2**64
    z      = ((z ^ (z >> 27)) * 0x94D049BB133111EB) mod 2**64
    output = z ^ (z >> 31)

Floats in the open interval (0, 1) are ``((output >> 11) + 0.5) / 2**53``.
Bounded integers in ``[0, bound)`` use rejection sampling: draw ``output``
until ``output < 2**64 - (2**64 mod bound)`` and return ``output mod bound``.
A derived stream for ``label`` starts from seed
``mix(seed ^ mix(label + 0x9E3779B97F4A7C15))`` where ``mix`` is the output
function above applied to its argument.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


class ClusterBenchError(Exception):
    """Runtime failure that the CLI reports with exit status 1."""


class ContractViolation(ClusterBenchError, ValueError):
    """A caller broke an operation's precondition."""


def _mix64(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


@dataclass
class RandomStream:
    """SplitMix64 stream. Single owner; use :func:`derive_stream` to fan out."""

    seed: int
    position: int = 0
    _state: int = field(init=False, repr=False)

    def __post_init__(self):
        self.seed &= MASK64
        self._state = self.seed
        for _ in range(self.position):
            self._advance()

    def _advance(self) -> int:
        self._state = (self._state + GOLDEN_GAMMA) & MASK64
        return _mix64(self._state)

    def next_u64(self) -> int:
        self.position += 1
        return self._advance()

    def next_float(self) -> float:
        """Uniform draw from the open interval (0, 1)."""
        return ((self.next_u64() >> 11) + 0.5) / 9007199254740992.0

    def next_below(self, bound: int) -> int:
        if bound < 1:
            raise ContractViolation("bound must be >= 1")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % bound

    def floats(self, count: int) -> np.ndarray:
        return np.array([self.next_float() for _ in range(count)], dtype=np.float64)


def derive_stream(base: RandomStream, label: int) -> RandomStream:
    """Return a fresh stream determined only by ``(base.seed, label)``."""
    return RandomStream(_mix64(base.seed ^ _mix64((label + GOLDEN_GAMMA) & MASK64)))


def as_data_matrix(data) -> np.ndarray:
    """Coerce to a validated ``(n, d)`` float64 array or raise."""
    violations = validate_data(data)
    if violations:
        raise ContractViolation("; ".join(str(v) for v in violations[:5]))
    return np.asarray(data, dtype=np.float64)


class Violation(NamedTuple):
    row: int | None
    column: int | None
    reason: str

    def __str__(self):
        where = []
        if self.row is not None:
            where.append(f"row {self.row}")
        if self.column is not None:
            where.append(f"column {self.column}")
        return f"{', '.join(where)}: {self.reason}" if where else self.reason


def validate_data(data) -> list[Violation]:
    """Check the data-matrix invariants. An empty list means the data is valid."""
    if isinstance(data, np.ndarray):
        rows = data
    else:
        rows = list(data)
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            width = len(rows[0])
            return [
                Violation(i, None, f"expected {width} columns, found {len(r)}")
                for i, r in enumerate(rows)
                if len(r) != width
            ]
        rows = np.asarray(rows, dtype=np.float64) if rows else np.empty((0, 0))
    if rows.ndim != 2:
        return [Violation(None, None, f"expected a 2-D matrix, got {rows.ndim} dimension(s)")]
    out = []
    if rows.shape[0] < 1:
        out.append(Violation(None, None, "n ≥ 1 required"))
    if rows.shape[1] < 1:
        out.append(Violation(None, None, "d ≥ 1 required"))
    if out:
        return out
    try:
        values = rows.astype(np.float64)
    except (TypeError, ValueError):
        return [Violation(None, None, "non-numeric entries")]
    for i, j in zip(*np.nonzero(~np.isfinite(values))):
        out.append(Violation(int(i), int(j), f"non-finite value {values[i, j]!r}"))
    return out


def squared_euclidean(a, b) -> float:
    """Sum of squared coordinate differences, accumulated left to right."""
    a = np.asarray(a, dtype=np.float64).ravel()
    b = np.asarray(b, dtype=np.float64).ravel()
    if a.shape != b.shape:
        raise ContractViolation(f"dimension mismatch: {a.size} vs {b.size}")
    total = 0.0
    for x, y in zip(a.tolist(), b.tolist()):
        diff = x - y
        total += diff * diff
    return total


def pairwise_squared(data: np.ndarray, centers: np.ndarray) -> np.ndarray:
    """``(n, k)`` matrix of squared distances from every row to every center.

    Columns are accumulated in order so each entry equals
    :func:`squared_euclidean` on the same pair, bit for bit.
    """
    if data.shape[1] != centers.shape[1]:
        raise ContractViolation(
            f"dimension mismatch: data has {data.shape[1]} columns, centers {centers.shape[1]}"
        )
    out = np.zeros((data.shape[0], centers.shape[0]))
    for t in range(data.shape[1]):
        diff = data[:, t, None] - centers[None, :, t]
        out += diff * diff
    return out
