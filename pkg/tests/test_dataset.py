import numpy as np
import pytest

from hdlearn.benchmarks import StandardBenchmarks
from hdlearn.dataset import (
    CLASSIFICATION,
    REGRESSION,
    UNLABELED,
    EdgeList,
    load_dataset,
    load_edge_list,
    write_table,
)
from hdlearn.exceptions import DatasetError


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return path


class TestLoadDataset:
    def test_tab_delimited_classification(self, tmp_path):
        path = _write(tmp_path, "d.tsv", "id\tg1\tg2\tlabel\ns1\t1.5\t2\tA\ns2\t0\t-1e-3\tB\n")
        dataset = load_dataset(path)
        assert dataset.kind == CLASSIFICATION
        assert dataset.sample_ids == ["s1", "s2"]
        assert dataset.feature_names == ["g1", "g2"]
        assert dataset.matrix.tolist() == [[1.5, 2.0], [0.0, -0.001]]
        assert dataset.target == ["A", "B"]

    def test_comma_delimited_regression(self, tmp_path):
        path = _write(tmp_path, "d.csv", "id,x,y\na,0.1,1.0\nb,0.2,2.5\n")
        dataset = load_dataset(path, REGRESSION)
        assert dataset.labels.tolist() == [1.0, 2.5]

    def test_unlabeled(self, tmp_path):
        path = _write(tmp_path, "d.tsv", "id\tx\ty\na\t1\t2\n")
        dataset = load_dataset(path, UNLABELED)
        assert dataset.feature_names == ["x", "y"]
        assert dataset.target is None
        with pytest.raises(DatasetError):
            dataset.labels

    def test_blank_lines_are_skipped(self, tmp_path):
        path = _write(tmp_path, "d.tsv", "id\tx\tlabel\n\na\t1\tA\n\nb\t2\tB\n")
        assert load_dataset(path).n_rows == 2

    def test_ragged_line(self, tmp_path):
        path = _write(tmp_path, "d.tsv", "id\tx\tlabel\na\t1\tA\nb\t2\n")
        with pytest.raises(DatasetError, match="line 3 has 2 fields, expected 3"):
            load_dataset(path)

    def test_non_numeric_feature(self, tmp_path):
        path = _write(tmp_path, "d.tsv", "id\tx\tlabel\na\tabc\tA\n")
        with pytest.raises(DatasetError, match="column 'x': non-numeric value"):
            load_dataset(path)

    def test_non_numeric_regression_target(self, tmp_path):
        path = _write(tmp_path, "d.tsv", "id\tx\ty\na\t1\thigh\n")
        with pytest.raises(DatasetError, match="non-numeric target"):
            load_dataset(path, REGRESSION)

    def test_header_only(self, tmp_path):
        path = _write(tmp_path, "d.tsv", "id\tx\tlabel\n")
        with pytest.raises(DatasetError, match="header only"):
            load_dataset(path)

    def test_too_few_columns(self, tmp_path):
        path = _write(tmp_path, "d.tsv", "id\tlabel\na\tA\n")
        with pytest.raises(DatasetError):
            load_dataset(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(DatasetError, match="not found"):
            load_dataset(tmp_path / "absent.tsv")

    def test_unknown_kind(self, tmp_path):
        with pytest.raises(DatasetError):
            load_dataset(tmp_path / "d.tsv", "ranking")

    def test_summary(self, tmp_path):
        path = _write(tmp_path, "d.tsv", "id\tx\tlabel\na\t1\tA\nb\t2\tA\nc\t3\tB\n")
        summary = load_dataset(path).to_dict()
        assert summary["rows"] == 3
        assert summary["classes"] == {"A": 2, "B": 1}


class TestEdgeList:
    def test_header_and_default_weight(self, tmp_path):
        path = _write(tmp_path, "e.tsv", "source\ttarget\na\tb\nb\tc\n")
        edges = load_edge_list(path)
        assert edges.edges == [("a", "b", "1"), ("b", "c", "1")]

    def test_weights_and_comments(self, tmp_path):
        path = _write(tmp_path, "e.csv", "a,b,0.5\n# skipped\nb,c,2.0\n")
        edges = load_edge_list(path)
        assert len(edges) == 2
        assert edges.weight_classes == ["0.5", "2.0"]
        assert edges.numeric_weights().tolist() == [0.5, 2.0]

    def test_with_weights(self):
        edges = EdgeList(edges=[("a", "b", "0.5"), ("b", "c", "2.0")])
        assert edges.with_weights([0, 1]).edges == [("a", "b", "0"), ("b", "c", "1")]

    def test_non_numeric_weights(self):
        with pytest.raises(DatasetError):
            EdgeList(edges=[("a", "b", "heavy")]).numeric_weights()

    def test_wrong_field_count(self, tmp_path):
        path = _write(tmp_path, "e.tsv", "a\tb\tc\td\n")
        with pytest.raises(DatasetError, match="expected 2 or 3"):
            load_edge_list(path)

    def test_empty(self, tmp_path):
        path = _write(tmp_path, "e.tsv", "source\ttarget\n")
        with pytest.raises(DatasetError):
            load_edge_list(path)


def test_benchmark_export_reloads(tmp_path, blobs):
    path = blobs.write(tmp_path / "blobs.tsv")
    dataset = load_dataset(path)
    assert dataset.n_rows == blobs.X.shape[0]
    assert np.allclose(dataset.matrix, blobs.X)
    assert dataset.target[:3] == [str(v) for v in blobs.y[:3]]


def test_write_table(tmp_path):
    path = tmp_path / "out" / "rows.tsv"
    write_table(path, [{"a": 1, "b": "x"}, {"a": 2, "b": "y"}])
    assert path.read_text().splitlines() == ["a\tb", "1\tx", "2\ty"]


def test_benchmark_lookup():
    assert StandardBenchmarks.get_by_name("sine").category == "regression"
    assert StandardBenchmarks.get_by_name("no-such-benchmark") is None
    names = [d.name for d in StandardBenchmarks.get_by_category("classification")]
    assert names == ["gaussian-blobs", "planted-feature"]


def test_benchmarks_are_seeded():
    first = StandardBenchmarks.random_graph(seed=3)
    second = StandardBenchmarks.random_graph(seed=3)
    assert first.edges == second.edges
    assert np.array_equal(StandardBenchmarks.gaussian_blobs(seed=3).X, StandardBenchmarks.gaussian_blobs(seed=3).X)
