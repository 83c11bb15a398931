"""Run orchestration: builds models from resolved settings, collects and reports results."""

import json
import logging
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from tabulate import tabulate

from hdlearn.config_parser import Config, ConfigManager, HDLearnConfig
from hdlearn.dataset import Dataset, EdgeList, write_table
from hdlearn.metrics import MetricsCalculator
from hdlearn.models import (
    ClassificationModel,
    ClusteringModel,
    GraphModel,
    QuantumClassificationModel,
    RegressionModel,
    quantize_weights,
)
from hdlearn.models.base import HDModel
from hdlearn.persistence import save_model

logger = logging.getLogger(__name__)

Results = Dict[str, Any]


class ExperimentRunner:
    """Builds and evaluates models for one CLI (or scripted) invocation."""

    def __init__(self, config: Optional[HDLearnConfig] = None):
        self.config = config or ConfigManager.create_default_config()
        self.workers = int(self.config.general.get("workers", 1))

    def settings(self, section: str, overrides: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
        """Resolved hyperparameters: explicit overrides over the config section."""
        return ConfigManager.resolve(self.config, section, overrides)

    @staticmethod
    def _report(command: str, settings: Dict[str, Any], **sections) -> Results:
        report = {"command": command, "config": settings}
        report.update(sections)
        return report

    # ------------------------------------------------------------------
    # classification
    # ------------------------------------------------------------------

    def classification_model(self, settings: Dict[str, Any]) -> ClassificationModel:
        common = dict(
            dim=settings["dim"],
            levels=settings["levels"],
            seed=settings["seed"],
            per_feature_ranges=settings["per_feature_ranges"],
            workers=self.workers,
        )
        if settings["quantum"]:
            return QuantumClassificationModel(shots=settings["shots"], **common)
        return ClassificationModel(retrain_epochs=settings["retrain_epochs"], **common)

    def fit_classifier(self, dataset: Dataset, settings: Dict[str, Any]) -> Tuple[ClassificationModel, Results]:
        model = self.classification_model(settings)
        model.fit(dataset.matrix, dataset.labels, dataset.feature_names)
        metrics = {"training_accuracy": round(model.score(dataset.matrix, dataset.labels), 4)}
        if model.retrain_history:
            metrics["retrain_history"] = [round(a, 4) for a in model.retrain_history]
        if isinstance(model, QuantumClassificationModel):
            metrics["success_probabilities"] = {
                str(c): round(p, 6) for c, p in zip(model.classes, model.success_probabilities)
            }
        return model, self._report(
            "classify fit", settings, dataset=dataset.to_dict(), metrics=metrics
        )

    def predict_classifier(self, model: ClassificationModel, dataset: Dataset) -> Results:
        scores = model.similarities(dataset.matrix)
        best = np.argmax(scores, axis=1)
        rows = [
            {
                "sample": sample,
                "predicted": model.classes[b],
                "similarity": round(float(scores[i, b]), 6),
            }
            for i, (sample, b) in enumerate(zip(dataset.sample_ids, best))
        ]
        metrics = {}
        if dataset.target is not None:
            truth = [str(t) for t in dataset.target]
            metrics["accuracy"] = round(MetricsCalculator.accuracy(truth, [str(r["predicted"]) for r in rows]), 4)
        return self._report("classify predict", model.config(), metrics=metrics, table=rows)

    def cross_validate(self, dataset: Dataset, settings: Dict[str, Any]) -> Results:
        model = self.classification_model(settings)
        scores = model.cross_validate(
            dataset.matrix, dataset.labels, folds=settings["folds"], seed=settings["seed"],
            feature_names=dataset.feature_names,
        )
        summary = MetricsCalculator.summarize(scores, name="accuracy")
        rows = [{"fold": i + 1, "accuracy": round(s, 4)} for i, s in enumerate(scores)]
        return self._report(
            "classify cv", settings, dataset=dataset.to_dict(), metrics=summary.to_dict(), table=rows
        )

    def select_features(self, dataset: Dataset, settings: Dict[str, Any]) -> Results:
        model = self.classification_model(settings)
        report = model.stepwise_feature_selection(
            dataset.matrix,
            dataset.labels,
            direction=settings["direction"],
            threshold=settings["threshold"],
            folds=settings["folds"],
            seed=settings["seed"],
            feature_names=dataset.feature_names,
        )
        metrics = {
            "best_score": round(report.best_score, 4),
            "best_subset": report.best_subset,
            "rounds": len(report.rounds),
        }
        return self._report(
            "classify select", settings, dataset=dataset.to_dict(), metrics=metrics, table=report.to_rows()
        )

    def tune(self, dataset: Dataset, settings: Dict[str, Any]) -> Results:
        model = self.classification_model(settings)
        result = model.auto_tune(
            dataset.matrix,
            dataset.labels,
            dims=settings["grid_dims"],
            levels=settings["grid_levels"],
            retrain_epochs=settings["grid_retrain"],
            folds=settings["folds"],
            seed=settings["seed"],
            feature_names=dataset.feature_names,
        )
        table = [{k: (round(v, 4) if isinstance(v, float) else v) for k, v in row.items()} for row in result.table]
        best = {k: (round(v, 4) if isinstance(v, float) else v) for k, v in result.best.items()}
        return self._report(
            "classify tune", settings, dataset=dataset.to_dict(), metrics={"best": best}, table=table
        )

    # ------------------------------------------------------------------
    # clustering
    # ------------------------------------------------------------------

    def fit_clustering(self, dataset: Dataset, settings: Dict[str, Any]) -> Tuple[ClusteringModel, Results]:
        model = ClusteringModel(
            k=settings["k"],
            max_iterations=settings["max_iterations"],
            dim=settings["dim"],
            levels=settings["levels"],
            seed=settings["seed"],
        )
        model.fit_records(dataset.matrix, dataset.feature_names)
        sizes = np.bincount(model.assignments, minlength=model.k)
        metrics = {
            "converged": model.converged,
            "iterations": model.iterations_run,
            "cluster_sizes": sizes.tolist(),
        }
        if dataset.target is not None:
            metrics["adjusted_rand_index"] = round(
                MetricsCalculator.adjusted_rand_index(dataset.target, model.assignments), 4
            )
        rows = [{"sample": s, "cluster": int(c)} for s, c in zip(dataset.sample_ids, model.assignments)]
        return model, self._report(
            "cluster fit", settings, dataset=dataset.to_dict(), metrics=metrics, table=rows
        )

    def predict_clustering(self, model: ClusteringModel, dataset: Dataset) -> Results:
        clusters = model.predict_records(dataset.matrix)
        rows = [{"sample": s, "cluster": c} for s, c in zip(dataset.sample_ids, clusters)]
        return self._report("cluster predict", model.config(), table=rows)

    # ------------------------------------------------------------------
    # regression
    # ------------------------------------------------------------------

    def fit_regression(self, dataset: Dataset, settings: Dict[str, Any]) -> Tuple[RegressionModel, Results]:
        model = RegressionModel(
            dim=settings["dim"],
            k=settings["k"],
            learning_rate=settings["learning_rate"],
            epochs=settings["epochs"],
            temperature=settings["temperature"],
            quantized=settings["quantized"],
            cluster_sample=settings["cluster_sample"],
            cluster_iterations=settings["cluster_iterations"],
            seed=settings["seed"],
        )
        model.fit(dataset.matrix, dataset.labels.astype(np.float64))
        predictions = model.predict_many(dataset.matrix)
        metrics = {
            "training_r2": round(MetricsCalculator.r2(dataset.labels, predictions), 4),
            "training_rmse": round(MetricsCalculator.rmse(dataset.labels, predictions), 4),
        }
        return model, self._report("regress fit", settings, dataset=dataset.to_dict(), metrics=metrics)

    def predict_regression(self, model: RegressionModel, dataset: Dataset,
                           quantized: Optional[bool] = None) -> Results:
        predictions = model.predict_many(dataset.matrix, quantized)
        rows = [{"sample": s, "predicted": round(p, 6)} for s, p in zip(dataset.sample_ids, predictions)]
        metrics = {}
        if dataset.target is not None:
            metrics["r2"] = round(MetricsCalculator.r2(dataset.labels, predictions), 4)
            metrics["rmse"] = round(MetricsCalculator.rmse(dataset.labels, predictions), 4)
        return self._report("regress predict", model.config(), metrics=metrics, table=rows)

    # ------------------------------------------------------------------
    # graph
    # ------------------------------------------------------------------

    def build_graph(self, edge_list: EdgeList, settings: Dict[str, Any],
                    weight_levels: Optional[int] = None) -> Tuple[GraphModel, Results]:
        if weight_levels:
            classes = quantize_weights(edge_list.numeric_weights(), weight_levels)
            edge_list = edge_list.with_weights(classes)
        model = GraphModel(dim=settings["dim"], directed=settings["directed"], seed=settings["seed"])
        model.fit(edge_list.edges)
        metrics = {
            "nodes": len(model.nodes),
            "edges": len(model.edges),
            "weight_classes": [str(w) for w in model.weight_classes],
            "threshold": round(model.threshold, 6),
            "weight_accuracy": round(model.weight_accuracy(), 4),
        }
        return model, self._report("graph build", settings, metrics=metrics)

    def query_graph(self, model: GraphModel, pairs: Sequence[Tuple[str, str]]) -> Results:
        rows = []
        for u, v in pairs:
            exists, score = model.edge_exists(u, v)
            rows.append({"source": u, "target": v, "exists": exists, "score": round(score, 6)})
        return self._report("graph query", model.config(), metrics={"threshold": round(model.threshold, 6)}, table=rows)

    def predict_graph(self, model: GraphModel, pairs: Sequence[Tuple[str, str]]) -> Results:
        rows = [{"source": u, "target": v, "weight": model.predict(u, v)} for u, v in pairs]
        return self._report("graph predict", model.config(), table=rows)

    def mitigate_graph(self, model: GraphModel, rounds: int) -> Results:
        before = model.weight_accuracy()
        model.error_mitigation(rounds)
        metrics = {
            "rounds": rounds,
            "weight_accuracy_before": round(before, 4),
            "weight_accuracy_after": round(model.weight_accuracy(), 4),
        }
        return self._report("graph mitigate", model.config(), metrics=metrics)

    # ------------------------------------------------------------------
    # output
    # ------------------------------------------------------------------

    def save_results(self, results: Results, filename: str):
        """Save run results to a JSON file."""
        with open(filename, "w") as f:
            json.dump(results, f, indent=2, default=str)
        print(f"💾 Results saved to {filename}")

    @staticmethod
    def write_rows(results: Results, filename: str):
        """Export the result table as tab-delimited text."""
        write_table(filename, results.get("table", []))
        print(f"💾 Table written to {filename}")

    def print_summary(self, results: Results, show_config: Optional[bool] = None):
        """Print a formatted summary of a run."""
        table_format = self.config.output.get("table_format", "github")
        if show_config is None:
            show_config = self.config.output.get("print_config", True)

        print("\n" + "=" * 60)
        print(f"🧠 hdlearn - {results['command']}")
        print("=" * 60)

        if show_config:
            print("\n⚙️  Resolved configuration:")
            print("-" * 40)
            for key, value in results["config"].items():
                print(f"  • {key}: {value}")
            print("\n🌱 Environment:")
            print("-" * 40)
            for key, value in Config.as_dict().items():
                print(f"  • {key}: {value}")

        if results.get("dataset"):
            dataset = results["dataset"]
            print(f"\n📁 Dataset: {dataset['source']} ({dataset['rows']} rows, {dataset['features']} features)")

        if results.get("metrics"):
            print("\n📊 Results:")
            print("-" * 40)
            for key, value in results["metrics"].items():
                print(f"  • {key}: {value}")

        if results.get("table"):
            print()
            print(tabulate(results["table"], headers="keys", tablefmt=table_format))

        print("\n" + "=" * 60)


def save_trained(model: HDModel, path: str):
    """Persist a model and report it the way the CLI does."""
    save_model(model, path)
    print(f"✅ Saved {model.name} model to {path}")
