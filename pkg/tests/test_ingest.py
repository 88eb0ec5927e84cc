import hashlib
import io
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clusterbench.core import ContractViolation, RandomStream, validate_data
from clusterbench.ingest import (
    IRIS_SHA256,
    LabeledDataset,
    ParseError,
    bundled_iris_path,
    dump_csv,
    fetch_iris,
    generate_blobs,
    load_csv,
    select_features,
)


def test_iris_file(iris):
    assert iris.data.shape == (150, 4)
    assert Counter(iris.labels) == {"Iris-setosa": 50, "Iris-versicolor": 50, "Iris-virginica": 50}
    assert iris.checksum == IRIS_SHA256
    assert hashlib.sha256(bundled_iris_path().read_bytes()).hexdigest() == IRIS_SHA256
    assert iris.data[0].tolist() == [5.1, 3.5, 1.4, 0.2] and iris.labels[0] == "Iris-setosa"


def test_single_line():
    ds = load_csv(b"5.1,3.5,1.4,0.2,Iris-setosa\n")
    assert ds.data.tolist() == [[5.1, 3.5, 1.4, 0.2]] and ds.labels == ["Iris-setosa"]


def test_all_numeric_has_no_labels():
    ds = load_csv(io.StringIO("1,2\n3,4e-1\n-5,.5\n"))
    assert ds.labels is None and ds.data.tolist() == [[1, 2], [3, 0.4], [-5, 0.5]]


def test_explicit_label_column_and_delimiter():
    ds = load_csv(b"a;1;2\nb;3;4\n", delimiter=";", label_column=0)
    assert ds.labels == ["a", "b"] and ds.data.tolist() == [[1, 2], [3, 4]]


@pytest.mark.parametrize("payload,message", [
    (b"", "no data rows"),
    (b"\n\n", "no data rows"),
    (b"1,2\n3\n", "line 2"),
    (b"1,2\n3,x\n", "line 2, column 2"),
    (b"1,2\n3,4,5\n", "line 2"),
    (b"1,2\n3,1,5\n", "line 2"),
    (b"1,5\n3,nan\n", "line 2, column 2"),
])
def test_parse_errors(payload, message):
    with pytest.raises(ParseError, match=message):
        load_csv(payload)


def test_decimal_comma_rejected():
    with pytest.raises(ParseError):
        load_csv(b"2,5;1\n", delimiter=";")


def test_blank_lines():
    assert load_csv(b"1,2\n\n3,4\n\n").data.shape == (2, 2)
    with pytest.raises(ParseError):
        load_csv(b"1,2\n\n3,4\n", skip_blank=False)


def test_select_features(iris):
    two = select_features(iris, [0, 1])
    assert two.data.shape == (150, 2) and two.feature_names == ["sepal_length", "sepal_width"]
    assert two.labels == iris.labels
    assert select_features(iris, range(4)) == iris
    pw = select_features(iris, [3])
    assert pw.data.shape == (150, 1) and np.array_equal(pw.data[:, 0], iris.data[:, 3])
    with pytest.raises(ContractViolation):
        select_features(iris, [0, 0])
    with pytest.raises(ContractViolation):
        select_features(iris, [4])


@settings(max_examples=25)
@given(st.permutations([0, 1, 2, 3]), st.integers(1, 3))
def test_select_complementary_reconstructs(order, split):
    ds = load_csv(bundled_iris_path())
    first, rest = order[:split], order[split:]
    left, right = select_features(ds, first), select_features(ds, rest)
    rebuilt = np.empty_like(ds.data)
    rebuilt[:, first] = left.data
    rebuilt[:, rest] = right.data
    assert np.array_equal(rebuilt, ds.data)


@settings(max_examples=40)
@given(st.lists(st.lists(st.floats(allow_nan=False, allow_infinity=False), min_size=3, max_size=3),
                min_size=1, max_size=20),
       st.booleans())
def test_csv_round_trip(rows, with_labels):
    labels = [f"c{i % 3}" for i in range(len(rows))] if with_labels else None
    ds = LabeledDataset(np.array(rows, dtype=np.float64), labels)
    buf = io.StringIO()
    dump_csv(ds, buf)
    back = load_csv(buf.getvalue().encode())
    assert back == ds


def test_round_trip_iris(iris):
    buf = io.StringIO()
    dump_csv(iris, buf)
    back = load_csv(buf.getvalue().encode())
    assert np.array_equal(back.data, iris.data) and back.labels == iris.labels


def test_blobs():
    a = generate_blobs(3, 5, 2, (0, 10), 0.5, RandomStream(1))
    b = generate_blobs(3, 5, 2, (0, 10), 0.5, RandomStream(1))
    assert a == b and a.data.shape == (15, 2) and validate_data(a.data) == []
    flat = generate_blobs(2, 4, 3, (-1, 1), 0.0, RandomStream(2))
    assert len({tuple(r) for r in flat.data[:4]}) == 1
    assert len({tuple(r) for r in flat.data[4:]}) == 1


@settings(max_examples=30)
@given(st.integers(1, 5), st.integers(1, 6), st.integers(1, 4), st.floats(0, 10), st.integers(0, 2**64 - 1))
def test_blobs_always_valid(k, per, d, spread, seed):
    ds = generate_blobs(k, per, d, (-50.0, 50.0), spread, RandomStream(seed))
    assert validate_data(ds.data) == [] and len(ds.labels) == k * per


def test_fetch_offline(tmp_path):
    target = fetch_iris(tmp_path / "d", offline=True)
    assert hashlib.sha256(target.read_bytes()).hexdigest() == IRIS_SHA256


def test_fetch_falls_back_when_download_fails(tmp_path):
    target = fetch_iris(tmp_path, url="http://127.0.0.1:9/iris.data")
    assert target.read_bytes() == bundled_iris_path().read_bytes()
