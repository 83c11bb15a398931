"""Dataset and edge-list classes plus their delimited-text loaders."""

import csv
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from hdlearn.exceptions import DatasetError

logger = logging.getLogger(__name__)

CLASSIFICATION = "classification"
REGRESSION = "regression"
UNLABELED = "unlabeled"
DATASET_KINDS = (CLASSIFICATION, REGRESSION, UNLABELED)

EDGE_HEADER_NAMES = {"source", "src", "from", "u", "node1"}

PathLike = Union[str, Path]


@dataclass
class Dataset:
    """A feature matrix with sample ids and (unless unlabeled) a target column."""
    sample_ids: List[str]
    feature_names: List[str]
    matrix: np.ndarray
    target: Optional[List[Any]] = None
    kind: str = CLASSIFICATION
    source: Optional[str] = None

    def __post_init__(self):
        if self.kind not in DATASET_KINDS:
            raise DatasetError(f"Unknown dataset kind: {self.kind}")
        if self.matrix.ndim != 2 or self.matrix.shape[1] != len(self.feature_names):
            raise DatasetError("Matrix shape does not match the feature names")
        if self.matrix.shape[0] != len(self.sample_ids):
            raise DatasetError("Matrix rows do not match the sample ids")
        if self.kind != UNLABELED and (self.target is None or len(self.target) != len(self.sample_ids)):
            raise DatasetError("Target length does not match the row count")

    @property
    def n_rows(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_features(self) -> int:
        return self.matrix.shape[1]

    @property
    def labels(self) -> np.ndarray:
        if self.target is None:
            raise DatasetError("This dataset has no target column")
        return np.asarray(self.target)

    def to_dict(self) -> Dict[str, Any]:
        """Summary used in run reports."""
        summary = {
            "source": self.source,
            "kind": self.kind,
            "rows": self.n_rows,
            "features": self.n_features,
        }
        if self.kind == CLASSIFICATION:
            classes, counts = np.unique(self.labels, return_counts=True)
            summary["classes"] = {str(c): int(n) for c, n in zip(classes, counts)}
        return summary


@dataclass
class EdgeList:
    """Weighted edges read from delimited text."""
    edges: List[Tuple[str, str, str]] = field(default_factory=list)
    source: Optional[str] = None

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def weight_classes(self) -> List[str]:
        return list(dict.fromkeys(w for _, _, w in self.edges))

    def numeric_weights(self) -> np.ndarray:
        try:
            return np.array([float(w) for _, _, w in self.edges])
        except ValueError:
            raise DatasetError("Edge weights are not numeric and cannot be quantized")

    def with_weights(self, weights: Sequence[Any]) -> "EdgeList":
        return EdgeList(
            edges=[(u, v, str(w)) for (u, v, _), w in zip(self.edges, weights)],
            source=self.source,
        )


def _open_rows(path: PathLike) -> Tuple[List[Tuple[int, List[str]]], str]:
    path = Path(path)
    if not path.is_file():
        raise DatasetError(f"File not found: {path}")
    with open(path, newline="", encoding="utf-8") as f:
        lines = f.read().splitlines()

    first = next((line for line in lines if line.strip()), "")
    delimiter = "\t" if "\t" in first else ","
    rows = []
    for line_no, row in enumerate(csv.reader(lines, delimiter=delimiter), start=1):
        if not row or all(not cell.strip() for cell in row):
            continue
        rows.append((line_no, [cell.strip() for cell in row]))
    return rows, delimiter


def load_dataset(path: PathLike, kind: str = CLASSIFICATION) -> Dataset:
    """Read a delimited dataset.

    The header names the columns; the first column holds sample ids and the
    last the target (absent when ``kind`` is ``unlabeled``). Tab or comma is
    picked from the header line.
    """
    if kind not in DATASET_KINDS:
        raise DatasetError(f"Unknown dataset kind: {kind}")
    rows, delimiter = _open_rows(path)
    if not rows:
        raise DatasetError(f"{path}: file is empty")

    _, header = rows[0]
    labeled = kind != UNLABELED
    minimum = 3 if labeled else 2
    if len(header) < minimum:
        raise DatasetError(
            f"{path}: header has {len(header)} column(s); need an id column, "
            f"at least one feature{' and a target column' if labeled else ''}"
        )
    feature_names = header[1:-1] if labeled else header[1:]
    target_name = header[-1] if labeled else None

    sample_ids, values, target = [], [], []
    for line_no, row in rows[1:]:
        if len(row) != len(header):
            raise DatasetError(
                f"{path}: line {line_no} has {len(row)} fields, expected {len(header)}"
            )
        cells = row[1:1 + len(feature_names)]
        parsed = []
        for name, cell in zip(feature_names, cells):
            try:
                parsed.append(float(cell))
            except ValueError:
                raise DatasetError(
                    f"{path}: line {line_no}, column '{name}': non-numeric value '{cell}'"
                )
        sample_ids.append(row[0])
        values.append(parsed)
        if kind == CLASSIFICATION:
            target.append(row[-1])
        elif kind == REGRESSION:
            try:
                target.append(float(row[-1]))
            except ValueError:
                raise DatasetError(
                    f"{path}: line {line_no}, column '{target_name}': non-numeric target '{row[-1]}'"
                )

    if not sample_ids:
        raise DatasetError(f"{path}: dataset is empty (header only)")

    dataset = Dataset(
        sample_ids=sample_ids,
        feature_names=feature_names,
        matrix=np.array(values, dtype=np.float64),
        target=target if labeled else None,
        kind=kind,
        source=str(path),
    )
    logger.info(
        f"Loaded {dataset.n_rows} rows x {dataset.n_features} features from {path} "
        f"({'tab' if delimiter == chr(9) else 'comma'}-delimited)"
    )
    return dataset


def load_edge_list(path: PathLike, default_weight: str = "1") -> EdgeList:
    """Read ``source, target[, weight_class]`` lines; a header line is optional."""
    rows, _ = _open_rows(path)
    if rows and rows[0][1][0].lower() in EDGE_HEADER_NAMES:
        rows = rows[1:]

    edges = []
    for line_no, row in rows:
        if row[0].startswith("#"):
            continue
        if len(row) == 2:
            row = row + [default_weight]
        if len(row) != 3:
            raise DatasetError(f"{path}: line {line_no} has {len(row)} fields, expected 2 or 3")
        edges.append((row[0], row[1], row[2]))

    if not edges:
        raise DatasetError(f"{path}: edge list is empty")
    return EdgeList(edges=edges, source=str(path))


def write_table(path: PathLike, rows: List[Dict[str, Any]]):
    """Write dict rows as tab-delimited text with a header line."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as f:
        if not rows:
            return
        writer = csv.DictWriter(f, fieldnames=list(rows[0]), delimiter="\t")
        writer.writeheader()
        writer.writerows(rows)
