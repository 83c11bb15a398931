"""Score calculation and comparison for model evaluation runs."""

from dataclasses import dataclass
from typing import Any, Dict, List, Sequence

import numpy as np
from scipy import stats
from sklearn import metrics as skm


@dataclass
class ScoreSummary:
    """Aggregate of per-fold (or per-trial) scores."""
    name: str
    mean: float
    std: float
    min: float
    max: float
    count: int

    def to_dict(self) -> Dict[str, Any]:
        """Convert summary to dictionary."""
        return {
            "name": self.name,
            "mean": round(self.mean, 4),
            "std": round(self.std, 4),
            "min": round(self.min, 4),
            "max": round(self.max, 4),
            "count": self.count,
        }


class MetricsCalculator:
    """Calculate evaluation metrics from predictions."""

    @staticmethod
    def accuracy(y_true: Sequence, y_pred: Sequence) -> float:
        return float(skm.accuracy_score(list(y_true), list(y_pred)))

    @staticmethod
    def r2(y_true: Sequence[float], y_pred: Sequence[float]) -> float:
        return float(skm.r2_score(y_true, y_pred))

    @staticmethod
    def rmse(y_true: Sequence[float], y_pred: Sequence[float]) -> float:
        return float(np.sqrt(skm.mean_squared_error(y_true, y_pred)))

    @staticmethod
    def pearson(a: Sequence[float], b: Sequence[float]) -> float:
        return float(stats.pearsonr(a, b)[0])

    @staticmethod
    def adjusted_rand_index(labels_true: Sequence, labels_pred: Sequence) -> float:
        return float(skm.adjusted_rand_score(labels_true, labels_pred))

    @staticmethod
    def summarize(scores: Sequence[float], name: str = "score") -> ScoreSummary:
        """Calculate aggregated statistics from a list of scores."""
        if len(scores) == 0:
            raise ValueError("No scores provided")
        values = np.asarray(scores, dtype=np.float64)
        return ScoreSummary(
            name=name,
            mean=float(values.mean()),
            std=float(values.std()),
            min=float(values.min()),
            max=float(values.max()),
            count=int(values.size),
        )

    @staticmethod
    def rank_table(table: List[Dict[str, Any]], score_key: str = "score",
                   tie_keys: Sequence[str] = ()) -> List[Dict[str, Any]]:
        """Rows sorted best-first: higher score, then smaller ``tie_keys`` values."""
        return sorted(table, key=lambda row: (-row[score_key],) + tuple(row[k] for k in tie_keys))

    @staticmethod
    def compare_summaries(summaries: List[ScoreSummary]) -> Dict[str, Any]:
        """Compare summaries (e.g. grid cells or pipelines) against the best one."""
        if not summaries:
            return {}

        means = {s.name: s.mean for s in summaries}
        best_name = max(means, key=means.get)
        best = means[best_name]
        return {
            "values": means,
            "best": best_name,
            "relative_performance": {
                name: f"{(value - best) * 100:+.1f} pts" for name, value in means.items()
            },
            "ranking": [s.name for s in sorted(summaries, key=lambda s: -s.mean)],
        }
