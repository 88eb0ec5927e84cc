"""Abstract operation-count model for K-means and FCM.

K-means costs ``n*c*d*i`` units. FCM is modelled as ``n*c**2*d*i``: every
membership entry needs a sum over all ``c`` centers. The literature sometimes
quotes ``O(n*c*d**2*i)`` for FCM, but with ``d`` held fixed that cannot grow
faster than K-means in ``c``, which is the comparison this table exists to show.
Counts are unitless and are not flop counts of this package's kernels.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

INT64_MAX = (1 << 63) - 1


@dataclass(frozen=True)
class ComplexityInputs:
    n: int
    c: int
    d: int
    i: int

    def __post_init__(self):
        for name in ("n", "c", "d", "i"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")


@dataclass(frozen=True)
class ComplexityRow:
    experiment_index: int
    clusters: int
    kmeans_ops: int
    fcm_ops: int

    def as_dict(self) -> dict:
        return asdict(self)


def _checked(value: int) -> int:
    if value > INT64_MAX:
        raise OverflowError(f"operation count {value} exceeds the signed 64-bit range")
    return value


def kmeans_op_count(inputs: ComplexityInputs) -> int:
    return _checked(inputs.n * inputs.c * inputs.d * inputs.i)


def fcm_op_count(inputs: ComplexityInputs) -> int:
    return _checked(inputs.n * inputs.c * inputs.c * inputs.d * inputs.i)


def complexity_table(n: int, d: int, i: int, c_values) -> list[ComplexityRow]:
    c_values = list(c_values)
    if not c_values:
        raise ValueError("c_values must not be empty")
    rows = []
    for index, c in enumerate(c_values, start=1):
        inputs = ComplexityInputs(n=n, c=c, d=d, i=i)
        rows.append(ComplexityRow(index, c, kmeans_op_count(inputs), fcm_op_count(inputs)))
    return rows
