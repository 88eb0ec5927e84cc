"""Dataset loading: delimited numeric text, feature projection, synthetic blobs, Iris."""

from __future__ import annotations

import hashlib
import io
import logging
import os
import re
import shutil
import urllib.request
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path

import numpy as np

from .core import ClusterBenchError, ContractViolation, RandomStream

log = logging.getLogger(__name__)

IRIS_URL = "https://archive.ics.uci.edu/ml/machine-learning-databases/iris/iris.data"
# UCI iris.data as distributed: 150 rows plus one trailing blank line, 4551 bytes
IRIS_SHA256 = "6f608b71a7317216319b4d27b4d9bc84e6abd734eda7872b71a458569e2656c0"
IRIS_FEATURES = ("sepal_length", "sepal_width", "petal_length", "petal_width")

_NUMBER = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")


class ParseError(ClusterBenchError, ValueError):
    pass


@dataclass
class LabeledDataset:
    data: np.ndarray
    labels: list[str] | None = None
    feature_names: list[str] | None = None
    source: str | None = None
    checksum: str | None = None

    def __post_init__(self):
        n, d = self.data.shape
        if self.labels is not None and len(self.labels) != n:
            raise ContractViolation(f"{len(self.labels)} labels for {n} rows")
        if self.feature_names is not None and len(self.feature_names) != d:
            raise ContractViolation(f"{len(self.feature_names)} feature names for {d} columns")

    def __eq__(self, other):
        if not isinstance(other, LabeledDataset):
            return NotImplemented
        return (
            self.data.shape == other.data.shape
            and np.array_equal(self.data, other.data)
            and self.labels == other.labels
            and self.feature_names == other.feature_names
        )


def _is_number(token: str) -> bool:
    return _NUMBER.fullmatch(token.strip()) is not None


def load_csv(source, delimiter: str = ",", label_column: int | None = None,
             skip_blank: bool = True, name: str | None = None) -> LabeledDataset:
    """Parse delimited numeric rows with an optional class-label column.

    ``source`` is a path, bytes, or a binary/text stream. When ``label_column``
    is None the last column is taken as the label column if its first value is
    not numeric. The SHA-256 of the raw bytes is recorded on the result.
    """
    if isinstance(source, (str, os.PathLike)):
        name = name or str(source)
        raw = Path(source).read_bytes()
    elif isinstance(source, bytes):
        raw = source
    else:
        raw = source.read()
        if isinstance(raw, str):
            raw = raw.encode("utf-8")
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"input is not UTF-8 text: {exc}") from exc

    rows: list[tuple[int, list[str]]] = []
    for lineno, line in enumerate(io.StringIO(text), start=1):
        line = line.rstrip("\r\n")
        if not line.strip() and skip_blank:
            continue
        rows.append((lineno, line.split(delimiter)))
    if not rows:
        raise ParseError("no data rows")

    width = len(rows[0][1])
    for lineno, fields in rows:
        if len(fields) != width:
            raise ParseError(f"line {lineno}: expected {width} columns, found {len(fields)}")

    if label_column is None:
        label_column = width - 1 if not _is_number(rows[0][1][-1]) else None
    elif label_column < 0:
        label_column += width
    if label_column is not None and not 0 <= label_column < width:
        raise ContractViolation(f"label column {label_column} out of range for {width} columns")
    numeric = [j for j in range(width) if j != label_column]
    if not numeric:
        raise ParseError("no numeric columns")

    values = np.empty((len(rows), len(numeric)))
    labels = [] if label_column is not None else None
    for r, (lineno, fields) in enumerate(rows):
        for c, j in enumerate(numeric):
            token = fields[j].strip()
            if not _is_number(token):
                raise ParseError(f"line {lineno}, column {j + 1}: not a number: {token!r}")
            values[r, c] = float(token)
        if labels is not None:
            labels.append(fields[label_column].strip())
    return LabeledDataset(values, labels, None, name, hashlib.sha256(raw).hexdigest())


def dump_csv(ds: LabeledDataset, stream, delimiter: str = ",") -> None:
    """Write rows back out with shortest round-trip float formatting."""
    for i, row in enumerate(ds.data.tolist()):
        fields = [repr(v) for v in row]
        if ds.labels is not None:
            fields.append(ds.labels[i])
        stream.write(delimiter.join(fields) + "\n")


def select_features(ds: LabeledDataset, indices) -> LabeledDataset:
    indices = [int(i) for i in indices]
    d = ds.data.shape[1]
    if not indices:
        raise ContractViolation("at least one feature index is required")
    if len(set(indices)) != len(indices):
        raise ContractViolation(f"duplicate feature indices in {indices}")
    bad = [i for i in indices if not 0 <= i < d]
    if bad:
        raise ContractViolation(f"feature indices {bad} out of range for {d} columns")
    names = [ds.feature_names[i] for i in indices] if ds.feature_names is not None else None
    return replace(ds, data=ds.data[:, indices].copy(), feature_names=names)


def generate_blobs(cluster_count: int, points_per_cluster: int, dimension: int,
                   center_box: tuple[float, float], spread: float,
                   rng: RandomStream) -> LabeledDataset:
    """Uniform centers in ``center_box``; points are centers plus uniform noise in ``[-spread, spread]``.

    Draw order: all center coordinates first, then points cluster by cluster.
    """
    if min(cluster_count, points_per_cluster, dimension) < 1:
        raise ContractViolation("counts must be >= 1")
    if spread < 0:
        raise ContractViolation("spread must be >= 0")
    lo, hi = center_box
    centers = lo + (hi - lo) * rng.floats(cluster_count * dimension).reshape(cluster_count, dimension)
    noise = rng.floats(cluster_count * points_per_cluster * dimension)
    noise = spread * (2.0 * noise - 1.0)
    data = np.repeat(centers, points_per_cluster, axis=0) + noise.reshape(-1, dimension)
    labels = [str(j) for j in range(cluster_count) for _ in range(points_per_cluster)]
    return LabeledDataset(data, labels, None, "generate_blobs")


def bundled_iris_path() -> Path:
    return Path(str(resources.files("clusterbench") / "data" / "iris.data"))


def default_data_dir() -> Path:
    return Path(os.environ.get("CLUSTERBENCH_DATA_DIR", "data"))


def default_iris_path() -> Path:
    """``$CLUSTERBENCH_DATA_DIR/iris.data`` (default ``./data``) or the packaged copy."""
    candidate = default_data_dir() / "iris.data"
    return candidate if candidate.exists() else bundled_iris_path()


def load_iris(path=None) -> LabeledDataset:
    ds = load_csv(path or default_iris_path())
    ds.feature_names = list(IRIS_FEATURES)
    return ds


def fetch_iris(dest_dir=None, url: str = IRIS_URL, offline: bool = False) -> Path:
    """Write ``iris.data`` into ``dest_dir`` and verify its checksum.

    Downloads from ``url`` unless ``offline``; when the download fails the
    packaged copy is used. Either way the bytes must match ``IRIS_SHA256``.
    """
    dest_dir = Path(dest_dir) if dest_dir is not None else default_data_dir()
    target = dest_dir / "iris.data"
    payload = None
    if not offline:
        try:
            with urllib.request.urlopen(url, timeout=30) as response:
                payload = response.read()
        except OSError as exc:
            log.warning("download from %s failed (%s); using packaged copy", url, exc)
    if payload is None:
        payload = bundled_iris_path().read_bytes()
    digest = hashlib.sha256(payload).hexdigest()
    if digest != IRIS_SHA256:
        raise ClusterBenchError(f"checksum mismatch for iris.data: got {digest}, expected {IRIS_SHA256}")
    try:
        dest_dir.mkdir(parents=True, exist_ok=True)
        tmp = target.with_suffix(".part")
        tmp.write_bytes(payload)
        shutil.move(tmp, target)
    except OSError as exc:
        raise ClusterBenchError(f"cannot write {target}: {exc}") from exc
    return target
