import json

import pytest

from hdlearn.cli import main


@pytest.fixture(autouse=True)
def isolated(tmp_path, monkeypatch):
    # no configs/default.yml in the working directory: built-in defaults apply
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("HDLEARN_CONFIG", raising=False)


@pytest.fixture
def blob_file(tmp_path, blobs):
    return str(blobs.write(tmp_path / "blobs.tsv"))


@pytest.fixture
def edge_file(tmp_path, graph20):
    return str(graph20.write(tmp_path / "edges.tsv"))


def _results(path):
    with open(path) as f:
        return json.load(f)


class TestClassify:
    def test_cv_is_reproducible(self, tmp_path, blob_file):
        args = ["classify", "cv", blob_file, "--dim", "1000", "--folds", "3", "--seed", "7"]
        assert main(args + ["-o", str(tmp_path / "a.json")]) == 0
        assert main(args + ["-o", str(tmp_path / "b.json")]) == 0
        first, second = _results(tmp_path / "a.json"), _results(tmp_path / "b.json")
        assert first["table"] == second["table"]
        assert first["config"]["seed"] == 7
        assert first["metrics"]["mean"] >= 0.9

    def test_fit_then_predict(self, tmp_path, blob_file, capsys):
        model = str(tmp_path / "clf.hdm")
        assert main(["classify", "fit", blob_file, "--dim", "1000", "--model", model]) == 0
        assert main(["classify", "predict", blob_file, "--model", model, "-o", str(tmp_path / "p.json")]) == 0
        results = _results(tmp_path / "p.json")
        assert results["metrics"]["accuracy"] >= 0.95
        assert len(results["table"]) == 200
        assert "Saved classification model" in capsys.readouterr().out

    def test_quantum_fit(self, tmp_path, blob_file):
        out = str(tmp_path / "q.json")
        assert main(["classify", "fit", blob_file, "--quantum", "--dim", "1024", "-o", out]) == 0
        assert set(_results(out)["metrics"]["success_probabilities"]) == {"0", "1"}

    def test_select_writes_table(self, tmp_path, planted):
        data = str(planted.write(tmp_path / "planted.tsv"))
        table = tmp_path / "ranking.tsv"
        assert main(["classify", "select", data, "--dim", "1000", "--folds", "3", "--table", str(table)]) == 0
        lines = table.read_text().splitlines()
        assert lines[0].split("\t") == ["feature", "rank", "importance", "selected"]
        assert len(lines) == 11

    def test_tune(self, tmp_path, blob_file):
        out = str(tmp_path / "t.json")
        args = ["classify", "tune", blob_file, "--grid-dim", "500", "1000", "--grid-levels", "4", "--folds", "3", "-o", out]
        assert main(args) == 0
        results = _results(out)
        assert len(results["table"]) == 2
        assert results["metrics"]["best"]["dim"] in (500, 1000)

    def test_predict_with_wrong_model_kind(self, tmp_path, blob_file, edge_file, capsys):
        model = str(tmp_path / "g.hdm")
        assert main(["graph", "build", edge_file, "--dim", "500", "--model", model]) == 0
        assert main(["classify", "predict", blob_file, "--model", model]) == 1
        assert "error[invalid-input]" in capsys.readouterr().err


class TestClusterAndRegress:
    def test_cluster_reports_ari(self, tmp_path, three_blobs):
        data = str(three_blobs.write(tmp_path / "three.tsv"))
        out = str(tmp_path / "k.json")
        assert main(["cluster", "fit", data, "--k", "3", "--dim", "2000", "-o", out]) == 0
        assert _results(out)["metrics"]["adjusted_rand_index"] >= 0.95

    def test_cluster_unlabeled_predict(self, tmp_path, three_blobs):
        data = str(three_blobs.write(tmp_path / "three.tsv", labeled=False))
        model = str(tmp_path / "k.hdm")
        out = str(tmp_path / "p.json")
        assert main(["cluster", "fit", data, "--unlabeled", "--dim", "1000", "--model", model]) == 0
        assert main(["cluster", "predict", data, "--unlabeled", "--model", model, "-o", out]) == 0
        assert len(_results(out)["table"]) == 150

    def test_zero_learning_rate(self, tmp_path, linear, caplog):
        data = str(linear.write(tmp_path / "linear.tsv"))
        out = str(tmp_path / "r.json")
        args = ["regress", "fit", data, "--lr", "0", "--dim", "256", "--k", "2", "--epochs", "2", "-o", out]
        assert main(args) == 0
        assert abs(_results(out)["metrics"]["training_r2"]) < 1e-3
        assert "learning_rate is 0" in caplog.text

    def test_negative_learning_rate(self, tmp_path, linear, capsys):
        data = str(linear.write(tmp_path / "linear.tsv"))
        assert main(["regress", "fit", data, "--lr", "-1", "--dim", "64", "--k", "2"]) == 1
        assert "error[invalid-input]" in capsys.readouterr().err


class TestGraph:
    def test_build_query_and_mitigate(self, tmp_path, edge_file, graph20):
        model = str(tmp_path / "g.hdm")
        assert main(["graph", "build", edge_file, "--model", model]) == 0

        out = str(tmp_path / "q.json")
        u, v, _ = graph20.edges[0]
        assert main(["graph", "query", "--model", model, "--pair", u, v, "-o", out]) == 0
        assert _results(out)["table"][0]["exists"] is True

        mitigated = str(tmp_path / "m.hdm")
        assert main(["graph", "mitigate", "--model", model, "--rounds", "2", "--save", mitigated]) == 0
        assert (tmp_path / "m.hdm").exists()

    def test_unknown_node(self, tmp_path, edge_file, capsys):
        model = str(tmp_path / "g.hdm")
        assert main(["graph", "build", edge_file, "--dim", "500", "--model", model]) == 0
        capsys.readouterr()
        assert main(["graph", "query", "--model", model, "--pair", "n0", "nowhere"]) == 1
        assert capsys.readouterr().err.strip().endswith("error[unknown-node]: Unknown node: 'nowhere'")

    def test_query_needs_pairs(self, tmp_path, edge_file, capsys):
        model = str(tmp_path / "g.hdm")
        assert main(["graph", "build", edge_file, "--dim", "500", "--model", model]) == 0
        assert main(["graph", "predict", "--model", model]) == 1
        assert "--pair" in capsys.readouterr().err


class TestErrors:
    def test_missing_dataset(self, tmp_path, capsys):
        assert main(["classify", "cv", str(tmp_path / "absent.tsv")]) == 1
        assert "error[dataset]" in capsys.readouterr().err

    def test_corrupt_model_file(self, tmp_path, blob_file, capsys):
        bad = tmp_path / "bad.hdm"
        bad.write_bytes(b"HDLM\x01")
        assert main(["classify", "predict", blob_file, "--model", str(bad)]) == 1
        assert "error[checksum]" in capsys.readouterr().err

    def test_usage_error(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["classify"])
        assert excinfo.value.code == 2
        assert "error[usage]" in capsys.readouterr().err

    def test_invalid_config(self, tmp_path, blob_file, capsys):
        config = tmp_path / "c.yml"
        config.write_text("clustering:\n  k: 1\n")
        assert main(["classify", "cv", blob_file, "--config", str(config)]) == 1
        assert "error[invalid-config]" in capsys.readouterr().err


class TestCreateConfig:
    def test_create_and_refuse_overwrite(self, tmp_path):
        target = str(tmp_path / "my.yml")
        assert main(["create-config", "--output", target]) == 0
        assert main(["create-config", "--output", target]) == 1
        assert main(["create-config", "--output", target, "--force"]) == 0

    def test_created_file_drives_a_run(self, tmp_path, blob_file):
        target = tmp_path / "my.yml"
        assert main(["create-config", "--output", str(target)]) == 0
        text = target.read_text().replace("dim: 10000", "dim: 800", 1)
        target.write_text(text)
        out = str(tmp_path / "cv.json")
        assert main(["classify", "cv", blob_file, "--config", str(target), "--folds", "3", "-o", out]) == 0
        assert _results(out)["config"]["dim"] == 800
